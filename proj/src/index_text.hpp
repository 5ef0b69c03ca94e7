#pragma once

// Pieces shared by the high-dimensional index file formats.

#include <ostream>
#include <string>
#include <vector>

#include "eclipse/geometry.hpp"
#include "text_io.hpp"

namespace eclipse::text {

inline void write_numbers(std::ostream& out, std::span<const double> xs) {
  for (std::size_t i = 0; i < xs.size(); ++i) out << (i ? " " : "") << format_double(xs[i]);
}

inline void write_box(std::ostream& out, const Box& b) {
  out << "bounds " << b.dims() << '\n';
  write_numbers(out, b.lo);
  out << '\n';
  write_numbers(out, b.hi);
  out << '\n';
}

inline std::vector<double> read_numbers(TokenReader& rd, std::size_t count, const char* what) {
  auto t = rd.expect_line(what);
  if (t.size() != count) rd.fail(std::string("expected ") + std::to_string(count) + " values for " + what);
  std::vector<double> xs;
  xs.reserve(count);
  for (const auto& tok : t) xs.push_back(rd.number(tok));
  return xs;
}

inline Box read_box(TokenReader& rd) {
  const std::size_t dims = rd.section("bounds");
  Box b;
  b.lo = read_numbers(rd, dims, "lower bounds");
  b.hi = read_numbers(rd, dims, "upper bounds");
  for (std::size_t j = 0; j < dims; ++j) {
    if (!(b.lo[j] <= b.hi[j])) rd.fail("bounds with lo > hi");
  }
  return b;
}

/// "planes <N>" then one line per hyperplane: a b c_1 .. c_dims offset.
inline void write_planes(std::ostream& out, const HyperplaneSet& planes) {
  out << "planes " << planes.size() << '\n';
  for (std::size_t i = 0; i < planes.size(); ++i) {
    const auto [a, b] = planes.pair(i);
    out << a << ' ' << b << ' ';
    write_numbers(out, planes.coeffs(i));
    out << ' ' << format_double(planes.offset(i)) << '\n';
  }
}

inline HyperplaneSet read_planes(TokenReader& rd, std::size_t dims) {
  const std::size_t n = rd.section("planes");
  HyperplaneSet planes(dims);
  std::vector<double> coeffs(dims);
  for (std::size_t i = 0; i < n; ++i) {
    auto t = rd.expect_line("plane");
    if (t.size() != dims + 3) rd.fail("plane needs: a b coefficients offset");
    for (std::size_t j = 0; j < dims; ++j) coeffs[j] = rd.number(t[2 + j]);
    planes.add(coeffs, rd.number(t[dims + 2]), static_cast<std::uint32_t>(rd.integer(t[0])),
               static_cast<std::uint32_t>(rd.integer(t[1])));
  }
  return planes;
}

inline std::vector<std::uint32_t> read_indices(TokenReader& rd, std::size_t limit, const char* what) {
  auto t = rd.expect_line(what);
  if (t.empty()) rd.fail(std::string("missing ") + what);
  const std::size_t count = rd.integer(t[0]);
  if (t.size() != count + 1) rd.fail(std::string("count mismatch in ") + what);
  std::vector<std::uint32_t> out;
  out.reserve(count);
  for (std::size_t i = 1; i < t.size(); ++i) {
    const auto v = rd.integer(t[i]);
    if (v >= limit) rd.fail(std::string("index out of range in ") + what);
    out.push_back(static_cast<std::uint32_t>(v));
  }
  return out;
}

inline void write_indices(std::ostream& out, std::span<const std::uint32_t> xs) {
  out << xs.size();
  for (auto x : xs) out << ' ' << x;
  out << '\n';
}

}  // namespace eclipse::text
