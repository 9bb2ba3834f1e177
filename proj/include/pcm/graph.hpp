#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "pcm/error.hpp"
#include "pcm/matrix.hpp"

namespace pcm {

/// Vertex/edge view of a PC matrix. One undirected edge per defined
/// comparison; `label(i, j)` is c_ij and `label(j, i)` its reciprocal.
class ComparisonGraph {
 public:
  explicit ComparisonGraph(const PCMatrix& m)
      : n_(m.size()), labels_(n_ * n_, 0.0), adjacency_(n_) {
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        if (i != j && m.defined(i, j)) {
          labels_[i * n_ + j] = *m(i, j);
          adjacency_[i].push_back(j);
        }
      }
    }
    edges_ = defined_pairs(m);
  }

  std::size_t vertex_count() const noexcept { return n_; }
  const std::vector<Pair>& edges() const noexcept { return edges_; }
  std::span<const std::size_t> neighbors(std::size_t v) const { return adjacency_[v]; }
  bool has_edge(std::size_t i, std::size_t j) const { return labels_[i * n_ + j] > 0.0; }
  double label(std::size_t i, std::size_t j) const { return labels_[i * n_ + j]; }

 private:
  std::size_t n_;
  std::vector<double> labels_;  // 0 where no edge
  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<Pair> edges_;
};

inline ComparisonGraph build_graph(const PCMatrix& m) { return ComparisonGraph(m); }

/// Simple cycle in canonical form: smallest vertex first, and the second
/// vertex smaller than the last, so each undirected cycle appears once.
struct Cycle {
  std::vector<std::size_t> vertices;
  auto operator<=>(const Cycle&) const = default;
};

struct Path {
  std::vector<std::size_t> vertices;
  auto operator<=>(const Path&) const = default;
};

/// Irreducibility of a reciprocal matrix: the undirected comparison graph is
/// connected (every edge is traversable both ways).
inline bool is_irreducible(const ComparisonGraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<char> seen(n, 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t u : g.neighbors(v)) {
      if (!seen[u]) {
        seen[u] = 1;
        ++reached;
        stack.push_back(u);
      }
    }
  }
  return reached == n;
}

inline void require_irreducible(const ComparisonGraph& g) {
  if (!is_irreducible(g)) throw Error(ErrorCode::NotIrreducible, "matrix is not irreducible");
}

struct CycleOptions {
  std::size_t min_len = 3;
  /// Abort with CycleCapExceeded once more cycles than this are found.
  /// Unset means unlimited for n <= 8 and `kLargeGraphCycleCap` above.
  std::optional<std::size_t> max_cycles;
};

inline constexpr std::size_t kLargeGraphCycleCap = 1'000'000;

/// Calls `fn(vertices, ratio)` once per canonical simple cycle, in
/// lexicographic order of the canonical vertex sequences. `ratio` is the
/// cycle ratio R_s of the canonical orientation. Returns the cycle count.
template <class Fn>
std::size_t for_each_cycle(const ComparisonGraph& g, Fn&& fn, const CycleOptions& opts = {}) {
  const std::size_t n = g.vertex_count();
  const std::size_t cap =
      opts.max_cycles.value_or(n <= 8 ? static_cast<std::size_t>(-1) : kLargeGraphCycleCap);
  const std::size_t min_len = std::max<std::size_t>(opts.min_len, 3);

  std::size_t count = 0;
  std::vector<std::size_t> path;
  std::vector<double> prefix;  // prefix[d] = product of labels along path[0..d]
  std::vector<char> on_path(n, 0);
  path.reserve(n);
  prefix.reserve(n);

  // Iterative DFS frames: vertex plus the next neighbour index to try.
  std::vector<std::size_t> next(n, 0);
  for (std::size_t start = 0; start < n; ++start) {
    path.assign(1, start);
    prefix.assign(1, 1.0);
    on_path[start] = 1;
    next[0] = 0;
    while (!path.empty()) {
      const std::size_t depth = path.size() - 1;
      const std::size_t v = path.back();
      auto nbrs = g.neighbors(v);
      if (next[depth] == 0 && depth + 1 >= min_len && depth >= 2 && path[1] < v &&
          g.has_edge(v, start)) {
        // Visiting a vertex first time: report the cycle closing here.
        const double ratio = prefix[depth] / g.label(start, v);
        if (++count > cap) {
          throw Error(ErrorCode::CycleCapExceeded,
                      "more than " + std::to_string(cap) + " cycles in comparison graph");
        }
        fn(std::span<const std::size_t>(path), ratio);
      }
      bool descended = false;
      while (next[depth] < nbrs.size()) {
        const std::size_t u = nbrs[next[depth]++];
        if (u <= start || on_path[u]) continue;
        path.push_back(u);
        prefix.push_back(prefix[depth] * g.label(v, u));
        on_path[u] = 1;
        next[depth + 1] = 0;
        descended = true;
        break;
      }
      if (!descended) {
        on_path[v] = 0;
        path.pop_back();
        prefix.pop_back();
      }
    }
  }
  return count;
}

inline std::vector<Cycle> enumerate_cycles(const ComparisonGraph& g, std::size_t min_len = 3,
                                           std::optional<std::size_t> max_cycles = {}) {
  std::vector<Cycle> out;
  for_each_cycle(
      g,
      [&](std::span<const std::size_t> vs, double) {
        out.push_back({std::vector<std::size_t>(vs.begin(), vs.end())});
      },
      CycleOptions{min_len, max_cycles});
  return out;
}

/// Calls `fn(vertices, product)` for every simple path leaving `source`
/// (at least one edge), depth first with neighbours in ascending order.
/// `product` is the label product along the path.
template <class Fn>
void for_each_path_from(const ComparisonGraph& g, std::size_t source, Fn&& fn) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> path{source};
  std::vector<double> prefix{1.0};
  std::vector<char> on_path(n, 0);
  std::vector<std::size_t> next(n, 0);
  on_path[source] = 1;
  while (!path.empty()) {
    const std::size_t depth = path.size() - 1;
    const std::size_t v = path.back();
    if (next[depth] == 0 && depth > 0) fn(std::span<const std::size_t>(path), prefix[depth]);
    auto nbrs = g.neighbors(v);
    bool descended = false;
    while (next[depth] < nbrs.size()) {
      const std::size_t u = nbrs[next[depth]++];
      if (on_path[u]) continue;
      path.push_back(u);
      prefix.push_back(prefix[depth] * g.label(v, u));
      on_path[u] = 1;
      next[depth + 1] = 0;
      descended = true;
      break;
    }
    if (!descended) {
      on_path[v] = 0;
      path.pop_back();
      prefix.pop_back();
    }
  }
}

/// All simple paths from i to j, in depth-first order with ascending
/// neighbours. Throws NoPath when j is unreachable.
inline std::vector<Path> enumerate_paths(const ComparisonGraph& g, std::size_t i, std::size_t j) {
  if (i == j) throw Error(ErrorCode::BadParams, "path endpoints must differ");
  std::vector<Path> out;
  for_each_path_from(g, i, [&](std::span<const std::size_t> vs, double) {
    if (vs.back() == j) out.push_back({std::vector<std::size_t>(vs.begin(), vs.end())});
  });
  if (out.empty()) {
    throw Error(ErrorCode::NoPath, "no path between alternatives " + std::to_string(i + 1) +
                                       " and " + std::to_string(j + 1));
  }
  return out;
}

/// R_s = (c_{i1 i2} ... c_{i(m-1) im}) / c_{i1 im}.
inline double cycle_ratio(const ComparisonGraph& g, std::span<const std::size_t> cycle) {
  double num = 1.0;
  for (std::size_t t = 0; t + 1 < cycle.size(); ++t) num *= g.label(cycle[t], cycle[t + 1]);
  return num / g.label(cycle.front(), cycle.back());
}

inline double cycle_ratio(const ComparisonGraph& g, const Cycle& s) {
  return cycle_ratio(g, std::span<const std::size_t>(s.vertices));
}

/// Koczkodaj inconsistency of a ratio: min(|1 - R|, |1 - 1/R|).
inline double koczkodaj(double ratio) {
  return std::min(std::abs(1.0 - ratio), std::abs(1.0 - 1.0 / ratio));
}

inline double cycle_inconsistency(const ComparisonGraph& g, const Cycle& s) {
  return koczkodaj(cycle_ratio(g, s));
}

/// Diagonal of the degree matrix: number of defined comparisons per alternative.
inline std::vector<std::size_t> degree_matrix(const ComparisonGraph& g) {
  std::vector<std::size_t> d(g.vertex_count());
  for (std::size_t v = 0; v < d.size(); ++v) d[v] = g.neighbors(v).size();
  return d;
}

}  // namespace pcm
