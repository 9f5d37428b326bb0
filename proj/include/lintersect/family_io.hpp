#pragma once

// Plain-text family format:
//
//   # comment
//   n=5
//   1 2 3
//   3,4,5
//   {}          <- the empty set
//
// Elements are 1-based, separated by whitespace and/or commas. Blank lines
// and lines starting with '#' are ignored. The "n=<int>" header must come
// before the first set.

#include <cctype>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "lintersect/error.hpp"
#include "lintersect/setfam.hpp"

namespace lintersect {

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

inline Error parse_error(std::size_t line, const std::string& what) {
  return Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

inline unsigned parse_unsigned(const std::string& token, std::size_t line) {
  if (token.empty() || token.size() > 9 ||
      !std::all_of(token.begin(), token.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw parse_error(line, "expected a nonnegative integer, got '" + token + "'");
  return static_cast<unsigned>(std::stoul(token));
}

}  // namespace detail

inline SetFamily parse_family_text(std::istream& in) {
  std::string raw;
  std::size_t line_no = 0;
  std::optional<unsigned> n;
  std::vector<Mask> masks;
  std::vector<std::size_t> origin;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = detail::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (!n) {
      if (line.rfind("n=", 0) != 0) throw detail::parse_error(line_no, "expected header 'n=<int>'");
      const unsigned value = detail::parse_unsigned(detail::trim(line.substr(2)), line_no);
      if (value > kMaxGroundSet) throw detail::parse_error(line_no, "n must be at most 64");
      n = value;
      continue;
    }
    if (line == "{}") {
      masks.push_back(0);
      origin.push_back(line_no);
      continue;
    }
    std::string spaced = line;
    std::replace(spaced.begin(), spaced.end(), ',', ' ');
    std::istringstream tokens(spaced);
    std::string token;
    Mask m = 0;
    while (tokens >> token) {
      const unsigned e = detail::parse_unsigned(token, line_no);
      if (e < 1 || e > *n)
        throw detail::parse_error(line_no, "element " + token + " outside [1," + std::to_string(*n) + "]");
      const Mask bit = Mask{1} << (e - 1);
      if (m & bit) throw detail::parse_error(line_no, "element " + token + " repeated");
      m |= bit;
    }
    masks.push_back(m);
    origin.push_back(line_no);
  }
  if (!n) throw detail::parse_error(line_no, "missing header 'n=<int>'");
  for (std::size_t i = 0; i < masks.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (masks[i] == masks[j])
        throw detail::parse_error(origin[i], "duplicate of the set on line " + std::to_string(origin[j]));
  return SetFamily(*n, std::move(masks));
}

inline SetFamily parse_family_text(const std::string& text) {
  std::istringstream in(text);
  return parse_family_text(in);
}

inline std::string format_subset(Mask m) {
  if (m == 0) return "{}";
  std::string out;
  for (Mask u = m; u; u &= u - 1) {
    if (!out.empty()) out += ' ';
    out += std::to_string(std::countr_zero(u) + 1);
  }
  return out;
}

/// Canonical serialization; parse_family_text inverts it.
inline std::string format_family_text(const SetFamily& family) {
  std::string out = "n=" + std::to_string(family.n()) + "\n";
  for (Mask m : family.masks()) out += format_subset(m) + "\n";
  return out;
}

}  // namespace lintersect
