#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pcm {

enum class ErrorCode {
  NonSquare,
  BadSize,
  BadDiagonal,
  ReciprocityViolation,
  NonPositiveEntry,
  SyntaxError,
  NotComplete,
  NotIrreducible,
  ReducibleInput,
  NotConverged,
  SingularSystem,
  CycleCapExceeded,
  BadParams,
  DegenerateDenominator,
  NoPath,
  BadK,
  BadConfig,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::BadSize: return "BadSize";
    case ErrorCode::BadDiagonal: return "BadDiagonal";
    case ErrorCode::ReciprocityViolation: return "ReciprocityViolation";
    case ErrorCode::NonPositiveEntry: return "NonPositiveEntry";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::NotComplete: return "NotComplete";
    case ErrorCode::NotIrreducible: return "NotIrreducible";
    case ErrorCode::ReducibleInput: return "ReducibleInput";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::CycleCapExceeded: return "CycleCapExceeded";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::NoPath: return "NoPath";
    case ErrorCode::BadK: return "BadK";
    case ErrorCode::BadConfig: return "BadConfig";
  }
  return "Unknown";
}

/// Structured failure raised by every operation in the library.
///
/// `row()`/`col()` are zero-based cell coordinates when the error refers to a
/// matrix cell; `line()` is the one-based input line for parse errors.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}

  Error(ErrorCode code, std::string message, std::size_t row, std::size_t col)
      : std::runtime_error(std::move(message)), code_(code), row_(row), col_(col) {}

  static Error at_line(std::string message, std::size_t line) {
    Error e(ErrorCode::SyntaxError, "line " + std::to_string(line) + ": " + message);
    e.line_ = line;
    return e;
  }

  /// Same error annotated with the input line it came from.
  Error on_line(std::size_t line) const {
    Error e(code_, "line " + std::to_string(line) + ": " + what());
    e.row_ = row_;
    e.col_ = col_;
    e.line_ = line;
    return e;
  }

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> row() const noexcept { return row_; }
  std::optional<std::size_t> col() const noexcept { return col_; }
  std::optional<std::size_t> line() const noexcept { return line_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> row_;
  std::optional<std::size_t> col_;
  std::optional<std::size_t> line_;
};

}  // namespace pcm
