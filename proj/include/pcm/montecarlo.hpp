#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "pcm/error.hpp"
#include "pcm/graph.hpp"
#include "pcm/indices.hpp"
#include "pcm/matrix.hpp"

namespace pcm {

// ---------------------------------------------------------------------------
// Random streams
// ---------------------------------------------------------------------------

/// 64-bit engine with explicit, library-independent conversions so that
/// experiment output is reproducible across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent substream for one base matrix.
  static Rng substream(std::uint64_t seed, std::uint64_t ordinal) {
    return Rng(splitmix64(splitmix64(seed) ^ splitmix64(ordinal + 0x632BE59BD9B4E019ULL)));
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, bound) by rejection.
  std::size_t below(std::size_t bound) {
    const std::uint64_t b = bound;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % b;
    std::uint64_t r;
    do {
      r = engine_();
    } while (r >= limit);
    return static_cast<std::size_t>(r % b);
  }

  static std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

 private:
  std::mt19937_64 engine_;
};

// ---------------------------------------------------------------------------
// Matrix generation, disturbance, removal
// ---------------------------------------------------------------------------

/// Consistent complete matrix from hidden weights drawn log-uniformly on
/// [1/weight_range, weight_range].
inline PCMatrix gen_consistent(std::size_t n, Rng& rng, double weight_range = 3.0) {
  const double span = std::log(weight_range);
  std::vector<double> u(n);
  for (double& x : u) x = std::exp(rng.uniform(-span, span));
  return PCMatrix::from_weights(u);
}

enum class GammaDistribution { Uniform, LogUniform };

/// Multiplies every upper-triangle entry by an independent factor drawn from
/// [1/d, d]; the lower triangle follows by reciprocity. No clipping.
inline PCMatrix disturb(const PCMatrix& m, int d, Rng& rng,
                        GammaDistribution dist = GammaDistribution::Uniform) {
  if (d < 1) throw Error(ErrorCode::BadParams, "disturbance level must be >= 1");
  if (d == 1) return m;
  const double hi = static_cast<double>(d);
  const double lo = 1.0 / hi;
  return PCMatrix::from_upper(
      m.size(),
      [&](std::size_t i, std::size_t j) -> Cell {
        if (!m.defined(i, j)) return missing;
        const double gamma = dist == GammaDistribution::Uniform
                                 ? rng.uniform(lo, hi)
                                 : std::exp(rng.uniform(std::log(lo), std::log(hi)));
        return *m(i, j) * gamma;
      },
      m.scale());
}

/// Largest number of comparisons removable from a complete n x n matrix
/// while keeping it irreducible.
constexpr std::size_t max_removable(std::size_t n) { return n * (n - 1) / 2 - (n - 1); }

namespace detail {

inline bool is_bridge(const ComparisonGraph& g, std::size_t a, std::size_t b) {
  const std::size_t n = g.vertex_count();
  std::vector<char> seen(n, 0);
  std::vector<std::size_t> stack{a};
  seen[a] = 1;
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t u : g.neighbors(v)) {
      if ((v == a && u == b) || (v == b && u == a) || seen[u]) continue;
      if (u == b) return false;
      seen[u] = 1;
      stack.push_back(u);
    }
  }
  return true;
}

}  // namespace detail

/// Comparisons whose removal keeps the matrix irreducible.
inline std::vector<Pair> removable_pairs(const PCMatrix& m) {
  const auto g = build_graph(m);
  std::vector<Pair> out;
  for (const Pair& e : g.edges()) {
    if (!detail::is_bridge(g, e.first, e.second)) out.push_back(e);
  }
  return out;
}

/// Removes one comparison chosen uniformly among those that keep the
/// comparison graph connected.
inline PCMatrix remove_one(const PCMatrix& m, Rng& rng) {
  const auto candidates = removable_pairs(m);
  if (candidates.empty()) throw Error(ErrorCode::BadK, "no comparison can be removed");
  const Pair p = candidates[rng.below(candidates.size())];
  return m.without_pair(p.first, p.second);
}

/// Removes k comparisons one at a time, each step uniform over the
/// connectivity-preserving choices.
inline PCMatrix remove_comparisons(const PCMatrix& m, std::size_t k, Rng& rng) {
  require_complete(m);
  if (k > max_removable(m.size())) {
    throw Error(ErrorCode::BadK, "cannot remove " + std::to_string(k) +
                                     " comparisons; at most " +
                                     std::to_string(max_removable(m.size())) + " keep it irreducible");
  }
  PCMatrix out = m;
  for (std::size_t step = 0; step < k; ++step) out = remove_one(out, rng);
  return out;
}

// ---------------------------------------------------------------------------
// Distances
// ---------------------------------------------------------------------------

/// (full - sampled) / max(full, sampled), or 0 when both are 0.
inline double rescaled_distance(double full, double sampled) {
  const double top = std::max(full, sampled);
  if (top > 0.0) return (full - sampled) / top;
  return 0.0;
}

inline double rescaled_distance(IndexId id, const PCMatrix& full, const PCMatrix& sampled,
                                const BlendParams& p = {}) {
  IndexSet one;
  include(one, id);
  return rescaled_distance(evaluate(full, p, one)[id], evaluate(sampled, p, one)[id]);
}

struct ExperimentConfig {
  std::size_t n = 7;
  std::size_t base_matrices = 1000;
  int d_max = 30;
  std::size_t removals_max = 15;
  BlendParams blend{};
  std::uint64_t seed = 0;
  double weight_range = 3.0;
  GammaDistribution gamma = GammaDistribution::Uniform;
  /// Draw every C_k from the complete matrix instead of extending C_{k-1}.
  bool independent_removals = false;
  unsigned threads = 1;
  /// Index values at or below this magnitude count as exactly 0 when
  /// forming distances, so floating-point residue on consistent or tree
  /// matrices does not register as inconsistency.
  double zero_tolerance = 1e-10;

  void check() const {
    if (n < 3) throw Error(ErrorCode::BadConfig, "n must be at least 3");
    if (base_matrices == 0) throw Error(ErrorCode::BadConfig, "need at least one base matrix");
    if (d_max < 1) throw Error(ErrorCode::BadConfig, "dmax must be at least 1");
    if (removals_max > max_removable(n)) {
      throw Error(ErrorCode::BadConfig, "removals must not exceed " +
                                            std::to_string(max_removable(n)) + " for n = " +
                                            std::to_string(n));
    }
    if (!(weight_range >= 1.0)) throw Error(ErrorCode::BadConfig, "weight range must be >= 1");
    if (threads == 0) throw Error(ErrorCode::BadConfig, "threads must be at least 1");
    try {
      blend.check();
    } catch (const Error& e) {
      throw Error(ErrorCode::BadConfig, e.what());
    }
  }
};

/// Mean rescaled distances D(I, k) for k = 0..removals_max.
class DistanceTable {
 public:
  DistanceTable() = default;
  explicit DistanceTable(std::size_t removals_max) {
    for (auto& row : mean_) row.assign(removals_max + 1, 0.0);
  }

  std::size_t removals_max() const { return mean_[0].size() - 1; }
  double operator()(IndexId id, std::size_t k) const { return mean_[idx(id)][k]; }
  double& operator()(IndexId id, std::size_t k) { return mean_[idx(id)][k]; }

  bool operator==(const DistanceTable&) const = default;

 private:
  static std::size_t idx(IndexId id) { return static_cast<std::size_t>(id); }
  std::array<std::vector<double>, kIndexCount> mean_;
};

/// Sum over k of |D(I, k)|.
inline double total_distance(const DistanceTable& t, IndexId id) {
  double s = 0.0;
  for (std::size_t k = 0; k <= t.removals_max(); ++k) s += std::abs(t(id, k));
  return s;
}

namespace detail {

inline double snap_zero(double v, double tol) { return std::abs(v) <= tol ? 0.0 : v; }

/// Sum over disturbance levels of Delta_I(C, C_k) for one base matrix.
inline DistanceTable base_matrix_sums(const ExperimentConfig& cfg, std::uint64_t ordinal) {
  Rng rng = Rng::substream(cfg.seed, ordinal);
  const PCMatrix base = gen_consistent(cfg.n, rng, cfg.weight_range);
  DistanceTable sums(cfg.removals_max);

  for (int d = 1; d <= cfg.d_max; ++d) {
    const PCMatrix full = disturb(base, d, rng, cfg.gamma);
    IndexValues ref;
    try {
      ref = evaluate(full, cfg.blend);
    } catch (const Error& e) {
      throw Error(e.code(), "base matrix " + std::to_string(ordinal) + ", d = " +
                                std::to_string(d) + ", k = 0: " + e.what());
    }
    for (IndexId id : kAllIndices) {
      const double r = detail::snap_zero(ref[id], cfg.zero_tolerance);
      sums(id, 0) += rescaled_distance(r, r);
    }
    PCMatrix sample = full;
    for (std::size_t k = 1; k <= cfg.removals_max; ++k) {
      IndexValues vals;
      try {
        sample = cfg.independent_removals ? remove_comparisons(full, k, rng)
                                          : remove_one(sample, rng);
        vals = evaluate(sample, cfg.blend);
      } catch (const Error& e) {
        throw Error(e.code(), "base matrix " + std::to_string(ordinal) + ", d = " +
                                  std::to_string(d) + ", k = " + std::to_string(k) + ": " +
                                  e.what());
      }
      for (IndexId id : kAllIndices) {
        sums(id, k) += rescaled_distance(detail::snap_zero(ref[id], cfg.zero_tolerance),
                                         detail::snap_zero(vals[id], cfg.zero_tolerance));
      }
    }
  }
  return sums;
}

}  // namespace detail

/// Runs the robustness experiment. Each base matrix draws from its own
/// substream and per-matrix sums are reduced in ordinal order, so the result
/// does not depend on `cfg.threads`.
inline DistanceTable run_experiment(const ExperimentConfig& cfg) {
  cfg.check();
  std::vector<DistanceTable> partial(cfg.base_matrices);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t b = next.fetch_add(1);
      if (b >= cfg.base_matrices) return;
      try {
        partial[b] = detail::base_matrix_sums(cfg, b);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = cfg.base_matrices;
        return;
      }
    }
  };

  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(cfg.threads, cfg.base_matrices));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  DistanceTable table(cfg.removals_max);
  const double count = static_cast<double>(cfg.base_matrices) * cfg.d_max;
  for (IndexId id : kAllIndices) {
    for (std::size_t k = 0; k <= cfg.removals_max; ++k) {
      double s = 0.0;
      for (const auto& p : partial) s += p(id, k);
      table(id, k) = s / count;
    }
  }
  return table;
}

// ---------------------------------------------------------------------------
// CSV output
// ---------------------------------------------------------------------------

inline std::string format_g6(double v) {
  if (v == 0.0) v = 0.0;  // drop negative zero
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

/// "index,k,D" rows, indices in canonical order, k ascending.
inline void write_distance_csv(std::ostream& os, const DistanceTable& t) {
  os << "index,k,D\n";
  for (IndexId id : kAllIndices) {
    for (std::size_t k = 0; k <= t.removals_max(); ++k) {
      os << name(id) << ',' << k << ',' << format_g6(t(id, k)) << '\n';
    }
  }
}

/// "index,total" rows in canonical index order.
inline void write_summary_csv(std::ostream& os, const DistanceTable& t) {
  os << "index,total\n";
  for (IndexId id : kAllIndices) os << name(id) << ',' << format_g6(total_distance(t, id)) << '\n';
}

/// Indices sorted by ascending total distance (ties by canonical order).
inline std::vector<std::pair<IndexId, double>> ranking(const DistanceTable& t) {
  std::vector<std::pair<IndexId, double>> out;
  for (IndexId id : kAllIndices) out.emplace_back(id, total_distance(t, id));
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.second < b.second; });
  return out;
}

}  // namespace pcm
