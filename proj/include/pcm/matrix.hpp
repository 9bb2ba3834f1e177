#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pcm/error.hpp"

namespace pcm {

/// A cell of a pairwise comparison matrix: a positive ratio or missing.
using Cell = std::optional<double>;

/// The missing-judgment sentinel ("?" in matrix files).
inline constexpr std::nullopt_t missing = std::nullopt;

/// Unvalidated row-major input to `validate`.
using Grid = std::vector<std::vector<Cell>>;

inline constexpr double kReciprocityTolerance = 1e-12;
inline constexpr double kDefaultScale = 9.0;

/// Square reciprocal matrix of positive ratios with optional missing entries.
///
/// Immutable once built. The upper triangle is the single source of truth:
/// lower-triangle cells always hold the exact floating-point reciprocal of
/// their mirror, and the diagonal is exactly 1.
class PCMatrix {
 public:
  std::size_t size() const noexcept { return n_; }
  double scale() const noexcept { return scale_; }

  Cell operator()(std::size_t i, std::size_t j) const { return cells_[i * n_ + j]; }
  bool defined(std::size_t i, std::size_t j) const { return cells_[i * n_ + j].has_value(); }

  /// Value of a defined cell; throws if the comparison is missing.
  double at(std::size_t i, std::size_t j) const {
    const Cell& c = cells_.at(i * n_ + j);
    if (!c) {
      throw Error(ErrorCode::NotComplete,
                  "comparison (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                      ") is missing",
                  i, j);
    }
    return *c;
  }

  /// True when some defined ratio lies outside [1/s, s]. Informational only.
  bool exceeds_scale() const {
    for (const Cell& c : cells_) {
      if (c && (*c > scale_ || *c < 1.0 / scale_)) return true;
    }
    return false;
  }

  /// Builds a matrix from its strict upper triangle. `upper(i, j)` is called
  /// for every i < j and must return a positive finite ratio or `missing`.
  template <class UpperFn>
  static PCMatrix from_upper(std::size_t n, UpperFn&& upper, double scale = kDefaultScale) {
    check_size(n);
    PCMatrix m(n, scale);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        Cell c = upper(i, j);
        if (c) m.set_pair(i, j, check_positive(*c, i, j));
      }
    }
    return m;
  }

  /// Consistent complete matrix with c_ij = w_i / w_j.
  static PCMatrix from_weights(std::span<const double> w, double scale = kDefaultScale) {
    return from_upper(w.size(), [&](std::size_t i, std::size_t j) -> Cell { return w[i] / w[j]; },
                      scale);
  }

  /// Copy with the comparison {i, j} removed (both orientations).
  PCMatrix without_pair(std::size_t i, std::size_t j) const {
    PCMatrix m = *this;
    m.cells_[i * n_ + j] = missing;
    m.cells_[j * n_ + i] = missing;
    return m;
  }

  /// Copy with alternatives relabelled: result(perm[i], perm[j]) = (*this)(i, j).
  PCMatrix permuted(std::span<const std::size_t> perm) const {
    PCMatrix m(n_, scale_);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) m.cells_[perm[i] * n_ + perm[j]] = (*this)(i, j);
    }
    return m;
  }

  Grid to_grid() const {
    Grid g(n_, std::vector<Cell>(n_));
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) g[i][j] = (*this)(i, j);
    }
    return g;
  }

  bool operator==(const PCMatrix&) const = default;

 private:
  friend PCMatrix validate(const Grid& grid, double scale);

  PCMatrix(std::size_t n, double scale) : n_(n), scale_(scale), cells_(n * n, missing) {
    for (std::size_t i = 0; i < n; ++i) cells_[i * n + i] = 1.0;
  }

  void set_pair(std::size_t i, std::size_t j, double value) {
    cells_[i * n_ + j] = value;
    cells_[j * n_ + i] = 1.0 / value;
  }

  static void check_size(std::size_t n) {
    if (n < 3) {
      throw Error(ErrorCode::BadSize,
                  "matrix must have at least 3 alternatives, got " + std::to_string(n));
    }
  }

  static double check_positive(double v, std::size_t i, std::size_t j) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw Error(ErrorCode::NonPositiveEntry,
                  "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                      ") must be positive and finite",
                  i, j);
    }
    return v;
  }

  std::size_t n_ = 0;
  double scale_ = kDefaultScale;
  std::vector<Cell> cells_;
};

/// Checks a candidate grid and returns the validated matrix.
///
/// Errors: NonSquare, BadSize (n < 3), BadDiagonal, NonPositiveEntry(i,j),
/// ReciprocityViolation(i,j). Reported coordinates are zero-based.
inline PCMatrix validate(const Grid& grid, double scale = kDefaultScale) {
  const std::size_t n = grid.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (grid[i].size() != n) {
      throw Error(ErrorCode::NonSquare, "row " + std::to_string(i + 1) + " has " +
                                            std::to_string(grid[i].size()) + " entries, expected " +
                                            std::to_string(n));
    }
  }
  PCMatrix::check_size(n);

  for (std::size_t i = 0; i < n; ++i) {
    if (!grid[i][i] || *grid[i][i] != 1.0) {
      throw Error(ErrorCode::BadDiagonal,
                  "diagonal entry " + std::to_string(i + 1) + " must be exactly 1", i, i);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && grid[i][j]) PCMatrix::check_positive(*grid[i][j], i, j);
    }
  }

  PCMatrix m(n, scale);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Cell& up = grid[i][j];
      const Cell& low = grid[j][i];
      if (up.has_value() != low.has_value() ||
          (up && std::abs(*low * *up - 1.0) > kReciprocityTolerance)) {
        throw Error(ErrorCode::ReciprocityViolation,
                    "entries (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") and (" +
                        std::to_string(j + 1) + "," + std::to_string(i + 1) +
                        ") are not reciprocal",
                    i, j);
      }
      if (up) m.set_pair(i, j, *up);
    }
  }
  return m;
}

inline bool is_complete(const PCMatrix& m) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      if (!m.defined(i, j)) return false;
    }
  }
  return true;
}

/// Unordered alternative pair, always stored with first < second.
struct Pair {
  std::size_t first;
  std::size_t second;
  auto operator<=>(const Pair&) const = default;
};

/// Defined comparisons as unordered pairs, in row-major upper-triangle order.
inline std::vector<Pair> defined_pairs(const PCMatrix& m) {
  std::vector<Pair> out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      if (m.defined(i, j)) out.push_back({i, j});
    }
  }
  return out;
}

/// Three mutually compared alternatives i < k < j with values (c_ik, c_kj, c_ij).
struct Triad {
  std::size_t i;
  std::size_t k;
  std::size_t j;
  double c_ik;
  double c_kj;
  double c_ij;

  /// c_ik c_kj / c_ij; equals 1 exactly for a consistent triad.
  double ratio() const { return c_ik * c_kj / c_ij; }
};

inline std::vector<Triad> list_triads(const PCMatrix& m) {
  std::vector<Triad> out;
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = i + 1; k < n; ++k) {
      if (!m.defined(i, k)) continue;
      for (std::size_t j = k + 1; j < n; ++j) {
        if (m.defined(k, j) && m.defined(i, j)) {
          out.push_back({i, k, j, *m(i, k), *m(k, j), *m(i, j)});
        }
      }
    }
  }
  return out;
}

}  // namespace pcm
