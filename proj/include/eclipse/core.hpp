#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "eclipse/error.hpp"

namespace eclipse {

using PointId = std::uint64_t;

/// Non-owning view of one point of a Dataset.
struct PointView {
  PointId id;
  std::span<const double> coords;

  std::size_t dim() const noexcept { return coords.size(); }
  double operator[](std::size_t j) const noexcept { return coords[j]; }
};

/// An owning point. Coordinates are finite and non-negative, d >= 2.
class Point {
 public:
  Point(PointId id, std::vector<double> coords);

  PointId id() const noexcept { return id_; }
  std::size_t dim() const noexcept { return coords_.size(); }
  std::span<const double> coords() const noexcept { return coords_; }
  double operator[](std::size_t j) const noexcept { return coords_[j]; }

  operator PointView() const noexcept { return {id_, coords_}; }

 private:
  PointId id_;
  std::vector<double> coords_;
};

/// n >= 1 points sharing one dimensionality d >= 2, stored row-major.
/// Ids are unique; construction validates every invariant.
class Dataset {
 public:
  Dataset(std::size_t dim, std::vector<PointId> ids, std::vector<double> coords);
  explicit Dataset(const std::vector<Point>& points);

  /// Points get ids 0..n-1 in row order.
  static Dataset from_rows(const std::vector<std::vector<double>>& rows, PointId first_id = 0);

  std::size_t size() const noexcept { return ids_.size(); }
  std::size_t dim() const noexcept { return dim_; }

  PointView operator[](std::size_t i) const noexcept {
    return {ids_[i], std::span<const double>(coords_.data() + i * dim_, dim_)};
  }
  PointId id(std::size_t i) const noexcept { return ids_[i]; }
  std::span<const double> row(std::size_t i) const noexcept {
    return {coords_.data() + i * dim_, dim_};
  }

  const std::vector<PointId>& ids() const noexcept { return ids_; }
  const std::vector<double>& coords() const noexcept { return coords_; }

  /// Copy of the rows at the given positions (positions, not ids).
  Dataset subset(std::span<const std::size_t> positions) const;

 private:
  std::size_t dim_;
  std::vector<PointId> ids_;
  std::vector<double> coords_;
};

/// w[1..d]. Entries are >= 0; rows derived from a RatioBox have w[d] == 1.
class WeightVector {
 public:
  explicit WeightVector(std::vector<double> w);

  std::size_t dim() const noexcept { return w_.size(); }
  double operator[](std::size_t j) const noexcept { return w_[j]; }
  std::span<const double> values() const noexcept { return w_; }

  friend bool operator==(const WeightVector&, const WeightVector&) = default;

 private:
  std::vector<double> w_;
};

/// Closed interval [lo, hi] for one attribute weight ratio w[j] / w[d].
struct RatioInterval {
  double lo;
  double hi;

  friend bool operator==(const RatioInterval&, const RatioInterval&) = default;
};

/// d-1 ratio intervals with 0 <= lo <= hi < inf.
class RatioBox {
 public:
  explicit RatioBox(std::vector<RatioInterval> intervals);

  /// The same interval repeated for each of the d-1 ratio dimensions.
  static RatioBox uniform(std::size_t dim, double lo, double hi);

  std::size_t dim() const noexcept { return intervals_.size() + 1; }
  std::size_t ratio_dims() const noexcept { return intervals_.size(); }
  const RatioInterval& operator[](std::size_t j) const noexcept { return intervals_[j]; }
  const std::vector<RatioInterval>& intervals() const noexcept { return intervals_; }

  bool all_upper_positive() const noexcept;

  /// Weight vector for a ratio vector r (w[j] = r[j], w[d] = 1).
  static WeightVector weights_for(std::span<const double> ratios);

 private:
  std::vector<RatioInterval> intervals_;
};

/// Weighted sum of p under w.
double score(std::span<const double> p, std::span<const double> w);
double score(const PointView& p, const WeightVector& w);

/// All 2^(d-1) corner weight vectors, lexicographic with lo before hi; duplicates kept.
std::vector<WeightVector> corner_weights(const RatioBox& box);

/// The d representative corners: all-lower first, then for j = d-1 down to 1 the
/// vector with hi_j in position j and lower bounds elsewhere.
std::vector<WeightVector> representative_corners(const RatioBox& box);

}  // namespace eclipse
