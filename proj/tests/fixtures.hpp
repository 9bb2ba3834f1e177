#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "pcm/pcm.hpp"

namespace pcm::testing {

/// [[1,2,12],[1/2,1,3],[1/12,1/3,1]]: one triad with ratio 0.5.
inline PCMatrix triad3() {
  return validate({{1.0, 2.0, 12.0}, {0.5, 1.0, 3.0}, {1.0 / 12, 1.0 / 3, 1.0}});
}

/// Consistently completable 4x4 matrix with c34 missing.
inline PCMatrix incomplete4() {
  return validate({{1.0, 2.0 / 3, 4.0 / 3, 0.5},
                   {1.5, 1.0, 2.0, 0.75},
                   {0.75, 0.5, 1.0, missing},
                   {2.0, 4.0 / 3, missing, 1.0}});
}

/// Irreducible 7x7 matrix with 11 comparisons and no triads.
inline PCMatrix no_triads7() {
  const Cell q = missing;
  return validate({{1.0, 0.5, q, q, q, q, 1.0 / 7},
                   {2.0, 1.0, q, 6.0, 4.0, 2.0, q},
                   {q, q, 1.0, 4.0, 3.0, 1.5, q},
                   {q, 1.0 / 6, 0.25, 1.0, q, q, 0.5},
                   {q, 0.25, 1.0 / 3, q, 1.0, q, 0.25},
                   {q, 0.5, 2.0 / 3, q, q, 1.0, 1.0 / 3},
                   {7.0, q, q, 2.0, 4.0, 3.0, 1.0}});
}

inline PCMatrix uniform(std::size_t n) {
  return PCMatrix::from_upper(n, [](std::size_t, std::size_t) -> Cell { return 1.0; });
}

/// Keeps only the listed comparisons of `m` (zero-based pairs).
inline PCMatrix keep_pairs(const PCMatrix& m, const std::vector<Pair>& keep) {
  return PCMatrix::from_upper(m.size(), [&](std::size_t i, std::size_t j) -> Cell {
    for (const Pair& p : keep) {
      if (p.first == i && p.second == j) return m(i, j);
    }
    return missing;
  });
}

/// Path 0-1-2-...-(n-1) as the only comparisons, with arbitrary ratios.
inline PCMatrix path_tree(std::size_t n, Rng& rng) {
  return PCMatrix::from_upper(n, [&](std::size_t i, std::size_t j) -> Cell {
    if (j == i + 1) return std::exp(rng.uniform(-2.0, 2.0));
    return missing;
  });
}

inline std::vector<double> random_weights(std::size_t n, Rng& rng) {
  std::vector<double> w(n);
  for (double& x : w) x = std::exp(rng.uniform(-1.5, 1.5));
  return w;
}

/// Complete matrix with independent log-uniform ratios in [1/9, 9].
inline PCMatrix random_complete(std::size_t n, Rng& rng) {
  return PCMatrix::from_upper(
      n, [&](std::size_t, std::size_t) -> Cell { return std::exp(rng.uniform(-std::log(9.0), std::log(9.0))); });
}

/// Random irreducible pattern of `m`: removes `k` comparisons keeping connectivity.
inline PCMatrix random_incomplete(const PCMatrix& m, std::size_t k, Rng& rng) {
  return remove_comparisons(m, k, rng);
}

inline std::vector<std::size_t> random_permutation(std::size_t n, Rng& rng) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[rng.below(i)]);
  return p;
}

}  // namespace pcm::testing
