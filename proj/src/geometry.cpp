#include "eclipse/geometry.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace eclipse {

namespace {

constexpr double kTouchTolerance = 1e-9;

}  // namespace

Box Box::cube(std::size_t dims, double lo, double hi) {
  return {std::vector<double>(dims, lo), std::vector<double>(dims, hi)};
}

Box Box::dual_of(const RatioBox& box) {
  Box b;
  for (const auto& iv : box.intervals()) {
    b.lo.push_back(-iv.hi);
    b.hi.push_back(-iv.lo);
  }
  return b;
}

bool Box::contains(std::span<const double> x) const noexcept {
  for (std::size_t j = 0; j < dims(); ++j) {
    if (x[j] < lo[j] || x[j] > hi[j]) return false;
  }
  return true;
}

bool Box::contains(const Box& inner) const noexcept {
  for (std::size_t j = 0; j < dims(); ++j) {
    if (inner.lo[j] < lo[j] || inner.hi[j] > hi[j]) return false;
  }
  return true;
}

bool Box::overlaps(const Box& other) const noexcept {
  for (std::size_t j = 0; j < dims(); ++j) {
    if (other.hi[j] < lo[j] || other.lo[j] > hi[j]) return false;
  }
  return true;
}

std::vector<double> Box::center() const {
  std::vector<double> c(dims());
  for (std::size_t j = 0; j < dims(); ++j) c[j] = lo[j] + (hi[j] - lo[j]) / 2.0;
  return c;
}

Box Box::child(std::size_t which) const {
  Box c = *this;
  for (std::size_t j = 0; j < dims(); ++j) {
    const double mid = lo[j] + (hi[j] - lo[j]) / 2.0;
    if ((which >> j) & 1u) {
      c.lo[j] = mid;
    } else {
      c.hi[j] = mid;
    }
  }
  return c;
}

double DualHyperplane::height(std::span<const double> x) const noexcept {
  double y = -offset;
  for (std::size_t j = 0; j < coeffs.size(); ++j) y += coeffs[j] * x[j];
  return y;
}

DualHyperplane dual_hyperplane(const PointView& p) {
  const std::size_t k = p.dim() - 1;
  return {std::vector<double>(p.coords.begin(), p.coords.begin() + static_cast<std::ptrdiff_t>(k)), p[k], p.id};
}

double PairHyperplane::value(std::span<const double> x) const noexcept {
  double v = -offset;
  for (std::size_t j = 0; j < coeffs.size(); ++j) v += coeffs[j] * x[j];
  return v;
}

PairHyperplane pair_hyperplane(const PointView& a, const PointView& b) {
  if (a.id == b.id) throw ContractError("pair_hyperplane of a point with itself");
  if (a.dim() != b.dim()) throw ContractError("pair_hyperplane on points of different dimension");
  const std::size_t k = a.dim() - 1;
  PairHyperplane h{std::vector<double>(k), a[k] - b[k], a.id, b.id};
  bool any = false;
  for (std::size_t j = 0; j < k; ++j) {
    h.coeffs[j] = a[j] - b[j];
    any = any || h.coeffs[j] != 0.0;
  }
  if (!any) {
    throw DegeneratePair("points " + std::to_string(a.id) + " and " + std::to_string(b.id) +
                         " have parallel dual hyperplanes");
  }
  return h;
}

std::pair<double, double> affine_range(std::span<const double> coeffs, double offset, const Box& box) {
  double lo = -offset, hi = -offset;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    const double a = coeffs[j] * box.lo[j];
    const double b = coeffs[j] * box.hi[j];
    lo += std::min(a, b);
    hi += std::max(a, b);
  }
  return {lo, hi};
}

void HyperplaneSet::add(std::span<const double> coeffs, double offset, std::uint32_t a, std::uint32_t b) {
  if (coeffs.size() != dims_) throw ContractError("hyperplane dimension mismatch");
  coeffs_.insert(coeffs_.end(), coeffs.begin(), coeffs.end());
  offsets_.push_back(offset);
  pairs_.emplace_back(a, b);
}

double HyperplaneSet::value(std::size_t i, std::span<const double> x) const noexcept {
  const auto c = coeffs(i);
  double v = -offsets_[i];
  for (std::size_t j = 0; j < dims_; ++j) v += c[j] * x[j];
  return v;
}

bool HyperplaneSet::crosses(std::size_t i, const Box& box) const noexcept {
  const auto [lo, hi] = range(i, box);
  return lo < 0.0 && hi > 0.0;
}

bool HyperplaneSet::touches(std::size_t i, const Box& box) const noexcept {
  const auto c = coeffs(i);
  double scale = std::abs(offsets_[i]);
  for (std::size_t j = 0; j < dims_; ++j) {
    scale += std::abs(c[j]) * std::max(std::abs(box.lo[j]), std::abs(box.hi[j]));
  }
  const double tol = kTouchTolerance * scale;
  const auto [lo, hi] = range(i, box);
  return lo <= tol && hi >= -tol;
}

std::uint64_t HyperplaneSet::fingerprint() const noexcept {
  // FNV-1a over the raw bits.
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](std::uint64_t v) {
    for (int k = 0; k < 8; ++k) {
      h ^= (v >> (8 * k)) & 0xffu;
      h *= 1099511628211ull;
    }
  };
  mix(dims_);
  mix(offsets_.size());
  for (double c : coeffs_) mix(std::bit_cast<std::uint64_t>(c));
  for (double o : offsets_) mix(std::bit_cast<std::uint64_t>(o));
  for (auto [a, b] : pairs_) mix((std::uint64_t{a} << 32) | b);
  return h;
}

}  // namespace eclipse
