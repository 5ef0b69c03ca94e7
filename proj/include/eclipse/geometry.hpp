#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "eclipse/core.hpp"

namespace eclipse {

/// Closed axis-aligned box in the (d-1)-dimensional dual ratio space.
struct Box {
  std::vector<double> lo;
  std::vector<double> hi;

  static Box cube(std::size_t dims, double lo, double hi);

  /// Dual query region of a ratio box: x_j in [-h_j, -l_j].
  static Box dual_of(const RatioBox& box);

  std::size_t dims() const noexcept { return lo.size(); }
  bool contains(std::span<const double> x) const noexcept;
  bool contains(const Box& inner) const noexcept;
  bool overlaps(const Box& other) const noexcept;
  std::vector<double> center() const;

  /// Child `which` of a 2^dims split at the center; bit j picks the upper half in dim j.
  Box child(std::size_t which) const;

  friend bool operator==(const Box&, const Box&) = default;
};

/// Dual of p: x_d = sum_{j<d} p[j] x_j - p[d]. Score of p at ratios r equals the
/// negated height at x = -r.
struct DualHyperplane {
  std::vector<double> coeffs;
  double offset;
  PointId source_id;

  double height(std::span<const double> x) const noexcept;
};

DualHyperplane dual_hyperplane(const PointView& p);

/// Where the dual hyperplanes of a and b meet once x_d is eliminated:
/// sum_j (a[j] - b[j]) x_j = a[d] - b[d]. value(x) > 0 means a scores lower than b at -x.
struct PairHyperplane {
  std::vector<double> coeffs;
  double offset;
  PointId id_a;
  PointId id_b;

  double value(std::span<const double> x) const noexcept;
};

/// Throws DegeneratePair when a and b agree on every coordinate but the last.
PairHyperplane pair_hyperplane(const PointView& a, const PointView& b);

/// Minimum and maximum of an affine form c.x - offset over a box (attained at corners).
std::pair<double, double> affine_range(std::span<const double> coeffs, double offset, const Box& box);

/// Flat storage of pair hyperplanes; pairs are referenced by position.
/// `a`/`b` are positions of the two source points in the owning index's point list.
class HyperplaneSet {
 public:
  HyperplaneSet() = default;
  explicit HyperplaneSet(std::size_t dims) : dims_(dims) {}

  void add(std::span<const double> coeffs, double offset, std::uint32_t a, std::uint32_t b);

  std::size_t dims() const noexcept { return dims_; }
  std::size_t size() const noexcept { return offsets_.size(); }
  std::span<const double> coeffs(std::size_t i) const noexcept {
    return {coeffs_.data() + i * dims_, dims_};
  }
  double offset(std::size_t i) const noexcept { return offsets_[i]; }
  std::pair<std::uint32_t, std::uint32_t> pair(std::size_t i) const noexcept { return pairs_[i]; }

  double value(std::size_t i, std::span<const double> x) const noexcept;
  std::pair<double, double> range(std::size_t i, const Box& box) const noexcept {
    return affine_range(coeffs(i), offsets_[i], box);
  }

  /// Strict sign change over the box: the hyperplane cuts the box interior.
  bool crosses(std::size_t i, const Box& box) const noexcept;

  /// Closed test with a small relative tolerance; never misses a true crossing.
  bool touches(std::size_t i, const Box& box) const noexcept;

  /// Stable hash of the stored data, used to check that two structures were built together.
  std::uint64_t fingerprint() const noexcept;

  friend bool operator==(const HyperplaneSet&, const HyperplaneSet&) = default;

 private:
  std::size_t dims_ = 0;
  std::vector<double> coeffs_;
  std::vector<double> offsets_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs_;
};

}  // namespace eclipse
