#pragma once

#include <algorithm>
#include <array>
#include <bitset>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pcm/error.hpp"
#include "pcm/graph.hpp"
#include "pcm/linalg.hpp"
#include "pcm/matrix.hpp"
#include "pcm/priority.hpp"

namespace pcm {

// ---------------------------------------------------------------------------
// Identifiers
// ---------------------------------------------------------------------------

/// Inconsistency indices defined for complete and incomplete matrices.
enum class IndexId {
  Ktilde,      ///< max cycle inconsistency
  I1,          ///< mean cycle inconsistency
  I2,          ///< sqrt(sum K_s^2) / |S|
  Ialpha,      ///< alpha * Ktilde + (1 - alpha) * I1
  Ialphabeta,  ///< alpha * Ktilde + beta * I1 + (1 - alpha - beta) * I2
  SH,          ///< Salo-Hamalainen over path products
  GCI1,        ///< geometric consistency, fixed normalization
  GCI2,        ///< geometric consistency, mean over defined comparisons
  GW,          ///< Golden-Wang with masked column scaling
  RE1,         ///< relative error, completed denominator
  RE2,         ///< relative error, defined comparisons only
  CI,          ///< Harker's consistency index
  LLS,         ///< logarithmic least squares criterion at the optimal completion
  Oliva,       ///< rho(D^-1 S) - 1
};

inline constexpr std::size_t kIndexCount = 14;

inline constexpr std::array<IndexId, kIndexCount> kAllIndices = {
    IndexId::Ktilde, IndexId::I1,   IndexId::I2,  IndexId::Ialpha, IndexId::Ialphabeta,
    IndexId::SH,     IndexId::GCI1, IndexId::GCI2, IndexId::GW,    IndexId::RE1,
    IndexId::RE2,    IndexId::CI,   IndexId::LLS, IndexId::Oliva,
};

constexpr std::string_view name(IndexId id) {
  constexpr std::array<std::string_view, kIndexCount> names = {
      "Ktilde", "I1", "I2", "Ialpha", "Ialphabeta", "SH", "GCI1",
      "GCI2",   "GW", "RE1", "RE2",   "CI",         "LLS", "Oliva"};
  return names[static_cast<std::size_t>(id)];
}

inline std::optional<IndexId> index_from_name(std::string_view s) {
  for (IndexId id : kAllIndices) {
    if (name(id) == s) return id;
  }
  return std::nullopt;
}

/// Indices defined only for complete matrices (reference suite).
enum class ClassicalId { CI, GCI, K, I1, I2, Ialpha, Ialphabeta, GW, ISH, RE };

inline constexpr std::size_t kClassicalCount = 10;

inline constexpr std::array<ClassicalId, kClassicalCount> kAllClassical = {
    ClassicalId::CI, ClassicalId::GCI,    ClassicalId::K,          ClassicalId::I1,
    ClassicalId::I2, ClassicalId::Ialpha, ClassicalId::Ialphabeta, ClassicalId::GW,
    ClassicalId::ISH, ClassicalId::RE,
};

constexpr std::string_view name(ClassicalId id) {
  constexpr std::array<std::string_view, kClassicalCount> names = {
      "CI", "GCI", "K", "I1", "I2", "Ialpha", "Ialphabeta", "GW", "ISH", "RE"};
  return names[static_cast<std::size_t>(id)];
}

template <class Id, std::size_t N>
struct ValueTable {
  std::array<double, N> values{};
  double& operator[](Id id) { return values[static_cast<std::size_t>(id)]; }
  double operator[](Id id) const { return values[static_cast<std::size_t>(id)]; }
  bool operator==(const ValueTable&) const = default;
};

using IndexValues = ValueTable<IndexId, kIndexCount>;
using ClassicalValues = ValueTable<ClassicalId, kClassicalCount>;

/// Subset of IndexId to evaluate.
using IndexSet = std::bitset<kIndexCount>;

inline IndexSet all_index_set() { return IndexSet().set(); }

inline IndexSet& include(IndexSet& set, IndexId id) {
  set.set(static_cast<std::size_t>(id));
  return set;
}

inline bool contains(const IndexSet& set, IndexId id) {
  return set.test(static_cast<std::size_t>(id));
}

/// Weights of the two parametrized families. `alpha` drives the alpha-index;
/// `ab_alpha` and `beta` drive the alpha,beta-index.
struct BlendParams {
  double alpha = 0.5;
  double ab_alpha = 0.3;
  double beta = 0.3;

  void check() const {
    const bool ok = alpha >= 0.0 && alpha <= 1.0 && ab_alpha >= 0.0 && beta >= 0.0 &&
                    ab_alpha + beta <= 1.0 + 1e-12;
    if (!ok) {
      throw Error(ErrorCode::BadParams,
                  "blend parameters need 0 <= alpha <= 1 and alpha + beta <= 1 with both >= 0");
    }
  }
};

// ---------------------------------------------------------------------------
// Classical indices (complete matrices)
// ---------------------------------------------------------------------------

namespace detail {

inline double row_log_mean(const PCMatrix& m, std::size_t i) {
  double s = 0.0;
  for (std::size_t j = 0; j < m.size(); ++j) s += std::log(*m(i, j));
  return s / static_cast<double>(m.size());
}

/// Golden-Wang distance between the column-normalized matrix and the
/// column-normalized weight pattern, both restricted to defined cells.
inline double golden_wang(const PCMatrix& m, std::span<const double> w) {
  const std::size_t n = m.size();
  double total = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double col = 0.0;
    double wcol = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (m.defined(i, j)) {
        col += *m(i, j);
        wcol += w[i];
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (m.defined(i, j)) total += std::abs(*m(i, j) / col - w[i] / wcol);
    }
  }
  return total / static_cast<double>(n);
}

inline double salo_hamalainen_term(double lo, double hi) {
  return (hi - lo) / ((1.0 + hi) * (1.0 + lo));
}

}  // namespace detail

/// The ten complete-matrix indices.
inline ClassicalValues classical_indices(const PCMatrix& m, const BlendParams& p = {}) {
  require_complete(m);
  p.check();
  const std::size_t n = m.size();
  const double nd = static_cast<double>(n);
  ClassicalValues out;

  const double lambda = principal_eigen(to_dense(m)).value;
  out[ClassicalId::CI] = std::max(0.0, (lambda - nd) / (nd - 1.0));

  std::vector<double> log_mean(n);
  for (std::size_t i = 0; i < n; ++i) log_mean[i] = detail::row_log_mean(m, i);

  double gci = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double le = std::log(*m(i, j)) + log_mean[j] - log_mean[i];
      gci += le * le;
    }
  }
  out[ClassicalId::GCI] = 2.0 * gci / ((nd - 1.0) * (nd - 2.0));

  double kmax = 0.0;
  double ksum = 0.0;
  double ksq = 0.0;
  const auto triads = list_triads(m);
  for (const Triad& t : triads) {
    const double k = koczkodaj(t.ratio());
    kmax = std::max(kmax, k);
    ksum += k;
    ksq += k * k;
  }
  const double count = static_cast<double>(triads.size());
  out[ClassicalId::K] = kmax;
  out[ClassicalId::I1] = ksum / count;
  out[ClassicalId::I2] = std::sqrt(ksq) / count;
  out[ClassicalId::Ialpha] = p.alpha * kmax + (1.0 - p.alpha) * out[ClassicalId::I1];
  out[ClassicalId::Ialphabeta] = p.ab_alpha * kmax + p.beta * out[ClassicalId::I1] +
                                 (1.0 - p.ab_alpha - p.beta) * out[ClassicalId::I2];

  out[ClassicalId::GW] = detail::golden_wang(m, gmm(m).weights());

  double sh = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double lo = std::numeric_limits<double>::infinity();
      double hi = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        const double r = *m(i, k) * *m(k, j);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
      }
      sh += detail::salo_hamalainen_term(lo, hi);
    }
  }
  out[ClassicalId::ISH] = 2.0 * sh / (nd * (nd - 1.0));

  double err = 0.0;
  double norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double c = std::log(*m(i, j));
      const double e = c - (log_mean[i] - log_mean[j]);
      err += e * e;
      norm += c * c;
    }
  }
  out[ClassicalId::RE] = norm > 0.0 ? err / norm : 0.0;
  return out;
}

// ---------------------------------------------------------------------------
// Matrix based indices (cycles and paths)
// ---------------------------------------------------------------------------

struct CycleIndices {
  double k_tilde = 0.0;
  double i1 = 0.0;
  double i2 = 0.0;
  std::size_t cycle_count = 0;
};

inline CycleIndices cycle_based_indices(const ComparisonGraph& g,
                                        std::optional<std::size_t> max_cycles = {}) {
  require_irreducible(g);
  double kmax = 0.0;
  double ksum = 0.0;
  double ksq = 0.0;
  const std::size_t count = for_each_cycle(
      g,
      [&](std::span<const std::size_t>, double ratio) {
        const double k = koczkodaj(ratio);
        kmax = std::max(kmax, k);
        ksum += k;
        ksq += k * k;
      },
      CycleOptions{3, max_cycles});
  if (count == 0) return {};
  const double c = static_cast<double>(count);
  return {kmax, ksum / c, std::sqrt(ksq) / c, count};
}

inline CycleIndices cycle_based_indices(const PCMatrix& m,
                                        std::optional<std::size_t> max_cycles = {}) {
  return cycle_based_indices(build_graph(m), max_cycles);
}

struct BlendIndices {
  double i_alpha = 0.0;
  double i_alpha_beta = 0.0;
};

inline BlendIndices blend_indices(const CycleIndices& c, const BlendParams& p = {}) {
  p.check();
  return {p.alpha * c.k_tilde + (1.0 - p.alpha) * c.i1,
          p.ab_alpha * c.k_tilde + p.beta * c.i1 + (1.0 - p.ab_alpha - p.beta) * c.i2};
}

/// Salo-Hamalainen index with bounds taken over all simple path products.
inline double sh_index_inc(const ComparisonGraph& g) {
  require_irreducible(g);
  const std::size_t n = g.vertex_count();
  std::vector<double> lo(n);
  std::vector<double> hi(n);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    std::fill(lo.begin(), lo.end(), std::numeric_limits<double>::infinity());
    std::fill(hi.begin(), hi.end(), 0.0);
    for_each_path_from(g, i, [&](std::span<const std::size_t> path, double product) {
      const std::size_t j = path.back();
      lo[j] = std::min(lo[j], product);
      hi[j] = std::max(hi[j], product);
    });
    for (std::size_t j = i + 1; j < n; ++j) total += detail::salo_hamalainen_term(lo[j], hi[j]);
  }
  const double nd = static_cast<double>(n);
  return 2.0 * total / (nd * (nd - 1.0));
}

inline double sh_index_inc(const PCMatrix& m) { return sh_index_inc(build_graph(m)); }

// ---------------------------------------------------------------------------
// Ranking based indices (ILLS weights unless stated otherwise)
// ---------------------------------------------------------------------------

/// `Fixed` divides by (n-1)(n-2)/2 as for complete matrices; `PerComparison`
/// averages over the defined comparisons.
enum class GciNormalization { Fixed, PerComparison };

/// `Completed` adds the filled-in cells to the denominator; `DefinedOnly`
/// skips every expression that involves a missing comparison.
enum class ReDenominator { Completed, DefinedOnly };

namespace detail {

/// ln(c_ij w_j / w_i) from log-weights.
inline double log_residual(const ComparisonGraph& g, std::span<const double> x, std::size_t i,
                           std::size_t j) {
  return std::log(g.label(i, j)) + x[j] - x[i];
}

inline double gci_from(const ComparisonGraph& g, std::span<const double> x, GciNormalization v) {
  double total = 0.0;
  for (const Pair& e : g.edges()) {
    const double r = log_residual(g, x, e.first, e.second);
    total += r * r;
  }
  const double nd = static_cast<double>(g.vertex_count());
  if (v == GciNormalization::Fixed) return 2.0 * total / ((nd - 1.0) * (nd - 2.0));
  return total / static_cast<double>(g.edges().size());
}

/// Sum over defined ordered pairs of squared log residuals.
inline double residual_sum(const ComparisonGraph& g, std::span<const double> x) {
  double total = 0.0;
  for (const Pair& e : g.edges()) {
    const double r = log_residual(g, x, e.first, e.second);
    total += 2.0 * r * r;
  }
  return total;
}

inline double re_from(const ComparisonGraph& g, std::span<const double> x, ReDenominator v) {
  const double num = residual_sum(g, x);
  double den = 0.0;
  const std::size_t n = g.vertex_count();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (g.has_edge(i, j)) {
        const double c = std::log(g.label(i, j));
        den += c * c;
      } else if (v == ReDenominator::Completed) {
        const double c = x[i] - x[j];
        den += c * c;
      }
    }
  }
  if (den > 0.0) return num / den;
  if (num == 0.0) return 0.0;
  throw Error(ErrorCode::DegenerateDenominator, "relative error has a zero denominator");
}

inline std::vector<double> normalized_exp(std::span<const double> x) {
  const double top = *std::max_element(x.begin(), x.end());
  std::vector<double> w(x.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) sum += (w[i] = std::exp(x[i] - top));
  for (double& v : w) v /= sum;
  return w;
}

inline DenseMatrix oliva_matrix(const ComparisonGraph& g) {
  const std::size_t n = g.vertex_count();
  DenseMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double deg = static_cast<double>(g.neighbors(i).size());
    for (std::size_t j : g.neighbors(i)) a(i, j) = g.label(i, j) / deg;
  }
  return a;
}

}  // namespace detail

inline double gci_inc(const PCMatrix& m, GciNormalization v) {
  const auto g = build_graph(m);
  return detail::gci_from(g, ills_log_weights(m, g), v);
}

inline double gw_inc(const PCMatrix& m) {
  const auto g = build_graph(m);
  return detail::golden_wang(m, detail::normalized_exp(ills_log_weights(m, g)));
}

inline double re_inc(const PCMatrix& m, ReDenominator v) {
  const auto g = build_graph(m);
  return detail::re_from(g, ills_log_weights(m, g), v);
}

/// Harker's consistency index (lambda_max(B) - n) / (n - 1).
inline double harker_ci(const PCMatrix& m) {
  const double nd = static_cast<double>(m.size());
  // lambda_max(B) >= n; clamp rounding below it.
  return std::max(0.0, (harker_rank(m).value - nd) / (nd - 1.0));
}

/// LLS criterion of the ILLS-optimal completion. Filled cells have zero
/// residual, so only defined comparisons (both orientations) contribute.
inline double lls_index(const PCMatrix& m) {
  const auto g = build_graph(m);
  return detail::residual_sum(g, ills_log_weights(m, g));
}

inline double oliva_index(const ComparisonGraph& g) {
  require_irreducible(g);
  return std::max(0.0, principal_eigen(detail::oliva_matrix(g)).value - 1.0);
}

inline double oliva_index(const PCMatrix& m) { return oliva_index(build_graph(m)); }

// ---------------------------------------------------------------------------
// Batch evaluation
// ---------------------------------------------------------------------------

/// Evaluates the requested indices on one irreducible matrix, sharing the
/// graph, the ILLS solution and the cycle scan between them. Indices not in
/// `which` are left at 0.
inline IndexValues evaluate(const PCMatrix& m, const BlendParams& p = {},
                            const IndexSet& which = all_index_set()) {
  p.check();
  const auto g = build_graph(m);
  require_irreducible(g);
  IndexValues out;
  auto want = [&](IndexId id) { return contains(which, id); };

  if (want(IndexId::Ktilde) || want(IndexId::I1) || want(IndexId::I2) ||
      want(IndexId::Ialpha) || want(IndexId::Ialphabeta)) {
    const CycleIndices c = cycle_based_indices(g);
    const BlendIndices b = blend_indices(c, p);
    out[IndexId::Ktilde] = c.k_tilde;
    out[IndexId::I1] = c.i1;
    out[IndexId::I2] = c.i2;
    out[IndexId::Ialpha] = b.i_alpha;
    out[IndexId::Ialphabeta] = b.i_alpha_beta;
  }
  if (want(IndexId::SH)) out[IndexId::SH] = sh_index_inc(g);

  if (want(IndexId::GCI1) || want(IndexId::GCI2) || want(IndexId::GW) || want(IndexId::RE1) ||
      want(IndexId::RE2) || want(IndexId::LLS)) {
    const auto x = ills_log_weights(m, g);
    out[IndexId::GCI1] = detail::gci_from(g, x, GciNormalization::Fixed);
    out[IndexId::GCI2] = detail::gci_from(g, x, GciNormalization::PerComparison);
    out[IndexId::GW] = detail::golden_wang(m, detail::normalized_exp(x));
    out[IndexId::RE1] = detail::re_from(g, x, ReDenominator::Completed);
    out[IndexId::RE2] = detail::re_from(g, x, ReDenominator::DefinedOnly);
    out[IndexId::LLS] = detail::residual_sum(g, x);
  }
  if (want(IndexId::CI)) out[IndexId::CI] = harker_ci(m);
  if (want(IndexId::Oliva)) out[IndexId::Oliva] = oliva_index(g);

  for (IndexId id : kAllIndices) {
    if (!want(id)) out[id] = 0.0;
  }
  return out;
}

}  // namespace pcm
