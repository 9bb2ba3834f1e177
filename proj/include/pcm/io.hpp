#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "pcm/error.hpp"
#include "pcm/matrix.hpp"

// Matrix text format:
//
//   # optional comment lines
//   n
//   c11 c12 ... c1n
//   ...
//   cn1 cn2 ... cnn
//
// Tokens are positive decimals, fractions "a/b" of positive integers, or "?"
// for a missing comparison. Blank lines are ignored.

namespace pcm {

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    std::size_t end = pos;
    while (end < line.size() && !std::isspace(static_cast<unsigned char>(line[end]))) ++end;
    if (end > pos) out.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return out;
}

inline bool parse_double(std::string_view s, double& out) {
  if (s.empty()) return false;
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), last, out);
  return ec == std::errc() && ptr == last && std::isfinite(out);
}

inline bool parse_positive_int(std::string_view s, std::uint64_t& out) {
  if (s.empty()) return false;
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), last, out);
  return ec == std::errc() && ptr == last && out > 0;
}

inline Cell parse_token(std::string_view tok, std::size_t line) {
  if (tok == "?") return missing;
  if (auto slash = tok.find('/'); slash != std::string_view::npos) {
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    if (!parse_positive_int(tok.substr(0, slash), a) ||
        !parse_positive_int(tok.substr(slash + 1), b)) {
      throw Error::at_line("bad fraction '" + std::string(tok) + "'", line);
    }
    return static_cast<double>(a) / static_cast<double>(b);
  }
  double v = 0.0;
  if (!parse_double(tok, v)) throw Error::at_line("bad number '" + std::string(tok) + "'", line);
  return v;
}

inline bool is_comment_or_blank(std::string_view line) {
  for (char ch : line) {
    if (ch == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

inline std::string format_value(double v) {
  char buf[64];
  if (v == std::floor(v) && v < 1e15) {
    std::snprintf(buf, sizeof buf, "%.0f", v);
    return buf;
  }
  const double inv = 1.0 / v;
  if (inv == std::floor(inv) && inv < 1e15 && 1.0 / inv == v) {
    std::snprintf(buf, sizeof buf, "1/%.0f", inv);
    return buf;
  }
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

/// Parses the matrix text format. Validation errors carry the line of the
/// offending row.
inline PCMatrix parse_matrix(std::string_view text, double scale = kDefaultScale) {
  std::vector<std::pair<std::size_t, std::string_view>> lines;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = text.substr(pos, end - pos);
    if (!detail::is_comment_or_blank(line)) lines.emplace_back(line_no, line);
    pos = end + 1;
  }
  if (lines.empty()) throw Error::at_line("missing matrix size", line_no);

  auto header = detail::split_ws(lines[0].second);
  std::uint64_t n = 0;
  if (header.size() != 1 || !detail::parse_positive_int(header[0], n)) {
    throw Error::at_line("expected matrix size", lines[0].first);
  }
  if (n < 3) {
    throw Error(ErrorCode::BadSize,
                "matrix must have at least 3 alternatives, got " + std::to_string(n))
        .on_line(lines[0].first);
  }
  if (lines.size() - 1 != n) {
    throw Error::at_line("expected " + std::to_string(n) + " rows, found " +
                             std::to_string(lines.size() - 1),
                         lines.back().first);
  }

  Grid grid(n);
  for (std::size_t r = 0; r < n; ++r) {
    const auto& [ln, line] = lines[r + 1];
    auto toks = detail::split_ws(line);
    if (toks.size() != n) {
      throw Error::at_line("expected " + std::to_string(n) + " entries, found " +
                               std::to_string(toks.size()),
                           ln);
    }
    for (auto tok : toks) grid[r].push_back(detail::parse_token(tok, ln));
  }

  try {
    return validate(grid, scale);
  } catch (const Error& e) {
    if (!e.row()) throw;
    // Reciprocity violations are reported at the lower-triangle cell's row.
    std::size_t row = e.code() == ErrorCode::ReciprocityViolation ? *e.col() : *e.row();
    throw e.on_line(lines[row + 1].first);
  }
}

/// Writes the matrix text format. parse_matrix(serialize_matrix(m)) == m.
inline std::string serialize_matrix(const PCMatrix& m) {
  std::ostringstream os;
  os << m.size() << '\n';
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j) os << ' ';
      Cell c = m(i, j);
      os << (c ? detail::format_value(*c) : std::string("?"));
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace pcm
