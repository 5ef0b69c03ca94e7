#pragma once

// Shared helpers for the line-oriented text formats (CSV, index files).

#include <charconv>
#include <cstdint>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "eclipse/error.hpp"

namespace eclipse::text {

/// Shortest form that still round-trips is not required; 17 significant digits always is.
inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

inline bool parse_double(std::string_view s, double& out) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

inline bool parse_u64(std::string_view s, std::uint64_t& out) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (s.empty()) return false;
  auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

/// Whitespace-token reader that tracks line numbers for error messages.
class TokenReader {
 public:
  explicit TokenReader(std::istream& in) : in_(in) {}

  /// Next non-empty line split on whitespace; false at end of input.
  bool next_line(std::vector<std::string>& tokens) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      std::istringstream ss(line);
      tokens.clear();
      for (std::string t; ss >> t;) tokens.push_back(t);
      if (!tokens.empty()) return true;
    }
    return false;
  }

  std::vector<std::string> expect_line(const char* what) {
    std::vector<std::string> tokens;
    if (!next_line(tokens)) throw ParseError(line_no_ + 1, std::string("unexpected end of input, expected ") + what);
    return tokens;
  }

  double number(const std::string& tok) const {
    double v = 0.0;
    if (!parse_double(tok, v)) fail("bad number '" + tok + "'");
    return v;
  }

  std::uint64_t integer(const std::string& tok) const {
    std::uint64_t v = 0;
    if (!parse_u64(tok, v)) fail("bad integer '" + tok + "'");
    return v;
  }

  /// Parses "key=value" and returns value as an integer.
  std::uint64_t keyed(const std::string& tok, std::string_view key) const {
    if (tok.size() <= key.size() + 1 || tok.compare(0, key.size(), key) != 0 || tok[key.size()] != '=') {
      fail("expected " + std::string(key) + "=<value>, got '" + tok + "'");
    }
    return integer(tok.substr(key.size() + 1));
  }

  /// Expects a "<label> <count>" section header.
  std::size_t section(const char* label) {
    auto t = expect_line(label);
    if (t.size() != 2 || t[0] != label) fail(std::string("expected section '") + label + " <count>'");
    return static_cast<std::size_t>(integer(t[1]));
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_no_, what); }

  std::size_t line_no() const noexcept { return line_no_; }

 private:
  std::istream& in_;
  std::size_t line_no_ = 0;
};

}  // namespace eclipse::text
