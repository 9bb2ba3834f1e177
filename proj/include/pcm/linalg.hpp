#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "pcm/error.hpp"

namespace pcm {

/// Row-major dense square matrix, sized for PC problems (n up to a few hundred).
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t size() const noexcept { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }

  std::vector<double> multiply(std::span<const double> x) const {
    std::vector<double> y(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
      const double* r = data_.data() + i * n_;
      double acc = 0.0;
      for (std::size_t j = 0; j < n_; ++j) acc += r[j] * x[j];
      y[i] = acc;
    }
    return y;
  }

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// Solves A x = b by Gaussian elimination with partial pivoting.
inline std::vector<double> solve_linear(DenseMatrix a, std::vector<double> b) {
  const std::size_t n = a.size();
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(a(i, j)));
  }
  const double tiny = scale * 1e-14 * static_cast<double>(n);

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
    }
    if (!(std::abs(a(piv, col)) > tiny)) {
      throw Error(ErrorCode::SingularSystem, "linear system is singular");
    }
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
      std::swap(b[piv], b[col]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a(r, col) / a(col, col);
      if (f == 0.0) continue;
      for (std::size_t j = col; j < n; ++j) a(r, j) -= f * a(col, j);
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double acc = b[i];
    for (std::size_t j = i + 1; j < n; ++j) acc -= a(i, j) * x[j];
    x[i] = acc / a(i, i);
  }
  return x;
}

/// Perron pair of a nonnegative irreducible matrix. `vector` sums to 1.
struct EigenResult {
  double value = 0.0;
  std::vector<double> vector;
};

struct PowerIterationOptions {
  double tolerance = 1e-13;
  std::size_t max_iterations = 100000;
};

/// Strong connectivity of the sparsity pattern of A.
inline bool pattern_irreducible(const DenseMatrix& a) {
  const std::size_t n = a.size();
  auto reach_all = [&](bool transpose) {
    std::vector<char> seen(n, 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t u = 0; u < n; ++u) {
        const double w = transpose ? a(u, v) : a(v, u);
        if (u != v && w != 0.0 && !seen[u]) {
          seen[u] = 1;
          ++count;
          stack.push_back(u);
        }
      }
    }
    return count == n;
  };
  return n > 0 && reach_all(false) && reach_all(true);
}

/// Principal eigenpair by power iteration on A + I.
///
/// The unit shift makes an irreducible nonnegative matrix primitive, so the
/// iteration converges to the Perron vector; the reported eigenvalue is for A.
/// Stops when the max relative change of the iterate drops below the
/// tolerance. Errors: ReducibleInput, NotConverged.
inline EigenResult principal_eigen(const DenseMatrix& a, const PowerIterationOptions& opts = {}) {
  const std::size_t n = a.size();
  if (!pattern_irreducible(a)) {
    throw Error(ErrorCode::ReducibleInput, "power iteration needs an irreducible matrix");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (a(i, j) < 0.0) throw Error(ErrorCode::BadParams, "matrix has a negative entry");
    }
  }

  std::vector<double> v(n, 1.0 / static_cast<double>(n));
  std::vector<double> y(n);
  double shifted = 0.0;
  for (std::size_t it = 0; it < opts.max_iterations; ++it) {
    y = a.multiply(v);
    for (std::size_t i = 0; i < n; ++i) y[i] += v[i];
    shifted = std::accumulate(y.begin(), y.end(), 0.0);  // sum(v) == 1
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      y[i] /= shifted;
      change = std::max(change, std::abs(y[i] - v[i]) / y[i]);
    }
    v.swap(y);
    if (change <= opts.tolerance) {
      auto av = a.multiply(v);
      double lambda = std::accumulate(av.begin(), av.end(), 0.0);
      return {lambda, std::move(v)};
    }
  }
  throw Error(ErrorCode::NotConverged, "power iteration did not converge");
}

}  // namespace pcm
