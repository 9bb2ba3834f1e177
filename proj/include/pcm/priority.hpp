#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

#include "pcm/error.hpp"
#include "pcm/graph.hpp"
#include "pcm/linalg.hpp"
#include "pcm/matrix.hpp"

namespace pcm {

/// Positive weights per alternative summing to 1.
class PriorityVector {
 public:
  PriorityVector() = default;

  /// Normalizes `weights` to sum 1. All entries must be positive.
  explicit PriorityVector(std::vector<double> weights) : w_(std::move(weights)) {
    const double sum = std::accumulate(w_.begin(), w_.end(), 0.0);
    for (double& x : w_) {
      if (!(x > 0.0) || !std::isfinite(x)) {
        throw Error(ErrorCode::BadParams, "priority weights must be positive and finite");
      }
      x /= sum;
    }
  }

  std::size_t size() const noexcept { return w_.size(); }
  double operator[](std::size_t i) const { return w_[i]; }
  std::span<const double> weights() const noexcept { return w_; }

 private:
  std::vector<double> w_;
};

inline void require_complete(const PCMatrix& m) {
  if (!is_complete(m)) throw Error(ErrorCode::NotComplete, "method requires a complete matrix");
}

inline DenseMatrix to_dense(const PCMatrix& m) {
  DenseMatrix a(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) a(i, j) = m(i, j).value_or(0.0);
  }
  return a;
}

/// Eigenvector method.
inline PriorityVector evm(const PCMatrix& m) {
  require_complete(m);
  return PriorityVector(principal_eigen(to_dense(m)).vector);
}

/// Geometric mean method: w_i proportional to the n-th root of the row product.
inline PriorityVector gmm(const PCMatrix& m) {
  require_complete(m);
  const std::size_t n = m.size();
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    double log_sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) log_sum += std::log(*m(i, j));
    w[i] = std::exp(log_sum / static_cast<double>(n));
  }
  return PriorityVector(std::move(w));
}

/// Harker's auxiliary matrix: b_ij = c_ij when defined, 0 when missing, and
/// b_ii = 1 + (number of missing comparisons in row i).
inline DenseMatrix harker_matrix(const PCMatrix& m) {
  const std::size_t n = m.size();
  DenseMatrix b(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t missing_count = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (m.defined(i, j)) {
        b(i, j) = *m(i, j);
      } else {
        ++missing_count;
      }
    }
    b(i, i) = 1.0 + static_cast<double>(missing_count);
  }
  return b;
}

/// Harker's eigenvector method for complete or incomplete matrices.
inline EigenResult harker_rank(const PCMatrix& m) {
  require_irreducible(build_graph(m));
  return principal_eigen(harker_matrix(m));
}

/// Diagonal used in the ILLS Laplacian. `Degree` is the form whose solution
/// minimizes the logarithmic least squares criterion; `MissingCount` keeps the
/// alternative reading for audit.
enum class LaplacianDiagonal { Degree, MissingCount };

/// Log-weights from the ILLS normal equations L x = g with x_0 = 0.
inline std::vector<double> ills_log_weights(const PCMatrix& m, const ComparisonGraph& g,
                                            LaplacianDiagonal diag = LaplacianDiagonal::Degree) {
  require_irreducible(g);
  const std::size_t n = m.size();
  // Row/column 0 is eliminated by the anchor x_0 = 0.
  DenseMatrix l(n - 1);
  std::vector<double> rhs(n - 1, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    const auto nbrs = g.neighbors(i);
    double d = static_cast<double>(diag == LaplacianDiagonal::Degree ? nbrs.size()
                                                                     : (n - 1) - nbrs.size());
    l(i - 1, i - 1) = d;
    for (std::size_t j : nbrs) {
      rhs[i - 1] += std::log(g.label(i, j));
      if (j != 0) l(i - 1, j - 1) = -1.0;
    }
  }
  auto x = solve_linear(std::move(l), std::move(rhs));
  x.insert(x.begin(), 0.0);
  return x;
}

/// Incomplete logarithmic least squares ranking.
inline PriorityVector ills(const PCMatrix& m, LaplacianDiagonal diag = LaplacianDiagonal::Degree) {
  auto x = ills_log_weights(m, build_graph(m), diag);
  // Shift by the max so exp never overflows before normalization.
  const double top = *std::max_element(x.begin(), x.end());
  for (double& v : x) v = std::exp(v - top);
  return PriorityVector(std::move(x));
}

/// Sum over defined ordered pairs i != j of (ln c_ij - ln w_i + ln w_j)^2.
inline double lls_criterion(const PCMatrix& m, std::span<const double> w) {
  double total = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (i == j || !m.defined(i, j)) continue;
      const double r = std::log(*m(i, j)) - std::log(w[i]) + std::log(w[j]);
      total += r * r;
    }
  }
  return total;
}

}  // namespace pcm
