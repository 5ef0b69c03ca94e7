#include "eclipse/core.hpp"

#include <cmath>
#include <string>
#include <unordered_set>

namespace eclipse {

namespace {

// Corner enumeration is exponential in d; beyond this the box is not usable anyway.
constexpr std::size_t kMaxCornerDims = 24;

void check_coords(std::span<const double> coords, PointId id) {
  if (coords.size() < 2) {
    throw ContractError("point " + std::to_string(id) + " has fewer than 2 dimensions");
  }
  for (double c : coords) {
    if (!std::isfinite(c)) {
      throw DomainError("point " + std::to_string(id) + " has a non-finite coordinate");
    }
    if (c < 0.0) {
      throw DomainError("point " + std::to_string(id) + " has a negative coordinate");
    }
  }
}

}  // namespace

Point::Point(PointId id, std::vector<double> coords) : id_(id), coords_(std::move(coords)) {
  check_coords(coords_, id_);
}

Dataset::Dataset(std::size_t dim, std::vector<PointId> ids, std::vector<double> coords)
    : dim_(dim), ids_(std::move(ids)), coords_(std::move(coords)) {
  if (dim_ < 2) throw ContractError("dataset dimensionality must be at least 2");
  if (ids_.empty()) throw ContractError("dataset must contain at least one point");
  if (coords_.size() != ids_.size() * dim_) {
    throw ContractError("dataset coordinate buffer does not match n * d");
  }
  std::unordered_set<PointId> seen;
  seen.reserve(ids_.size());
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (!seen.insert(ids_[i]).second) {
      throw DomainError("duplicate point id " + std::to_string(ids_[i]));
    }
    check_coords(row(i), ids_[i]);
  }
}

namespace {

Dataset pack(const std::vector<Point>& points) {
  if (points.empty()) throw ContractError("dataset must contain at least one point");
  const std::size_t d = points.front().dim();
  std::vector<PointId> ids;
  std::vector<double> coords;
  ids.reserve(points.size());
  coords.reserve(points.size() * d);
  for (const auto& p : points) {
    if (p.dim() != d) throw ContractError("points of a dataset must share one dimensionality");
    ids.push_back(p.id());
    coords.insert(coords.end(), p.coords().begin(), p.coords().end());
  }
  return Dataset(d, std::move(ids), std::move(coords));
}

}  // namespace

Dataset::Dataset(const std::vector<Point>& points) : Dataset(pack(points)) {}

Dataset Dataset::from_rows(const std::vector<std::vector<double>>& rows, PointId first_id) {
  if (rows.empty()) throw ContractError("dataset must contain at least one point");
  const std::size_t d = rows.front().size();
  std::vector<PointId> ids;
  std::vector<double> coords;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != d) throw ContractError("rows must share one dimensionality");
    ids.push_back(first_id + i);
    coords.insert(coords.end(), rows[i].begin(), rows[i].end());
  }
  return Dataset(d, std::move(ids), std::move(coords));
}

Dataset Dataset::subset(std::span<const std::size_t> positions) const {
  std::vector<PointId> ids;
  std::vector<double> coords;
  ids.reserve(positions.size());
  coords.reserve(positions.size() * dim_);
  for (std::size_t pos : positions) {
    ids.push_back(ids_[pos]);
    auto r = row(pos);
    coords.insert(coords.end(), r.begin(), r.end());
  }
  return Dataset(dim_, std::move(ids), std::move(coords));
}

WeightVector::WeightVector(std::vector<double> w) : w_(std::move(w)) {
  if (w_.size() < 2) throw ContractError("weight vector needs at least 2 entries");
  for (double x : w_) {
    if (!std::isfinite(x) || x < 0.0) throw ContractError("weights must be finite and >= 0");
  }
}

RatioBox::RatioBox(std::vector<RatioInterval> intervals) : intervals_(std::move(intervals)) {
  if (intervals_.empty()) throw ContractError("ratio box needs at least one interval");
  if (intervals_.size() >= kMaxCornerDims) throw ContractError("ratio box has too many dimensions");
  for (const auto& iv : intervals_) {
    if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi)) {
      throw ContractError("ratio bounds must be finite");
    }
    if (iv.lo < 0.0 || iv.lo > iv.hi) throw ContractError("ratio interval needs 0 <= lo <= hi");
  }
}

RatioBox RatioBox::uniform(std::size_t dim, double lo, double hi) {
  if (dim < 2) throw ContractError("ratio box needs d >= 2");
  return RatioBox(std::vector<RatioInterval>(dim - 1, RatioInterval{lo, hi}));
}

bool RatioBox::all_upper_positive() const noexcept {
  for (const auto& iv : intervals_) {
    if (!(iv.hi > 0.0)) return false;
  }
  return true;
}

WeightVector RatioBox::weights_for(std::span<const double> ratios) {
  std::vector<double> w(ratios.begin(), ratios.end());
  w.push_back(1.0);
  return WeightVector(std::move(w));
}

double score(std::span<const double> p, std::span<const double> w) {
  if (p.size() != w.size()) throw ContractError("score: point and weight dimensionality differ");
  double s = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) s += p[j] * w[j];
  return s;
}

double score(const PointView& p, const WeightVector& w) { return score(p.coords, w.values()); }

std::vector<WeightVector> corner_weights(const RatioBox& box) {
  const std::size_t k = box.ratio_dims();
  const std::size_t count = std::size_t{1} << k;
  std::vector<WeightVector> out;
  out.reserve(count);
  for (std::size_t mask = 0; mask < count; ++mask) {
    std::vector<double> w(k + 1);
    // Bit (k-1-j) selects hi for ratio j, so the first ratio varies slowest.
    for (std::size_t j = 0; j < k; ++j) {
      const bool hi = (mask >> (k - 1 - j)) & 1u;
      w[j] = hi ? box[j].hi : box[j].lo;
    }
    w[k] = 1.0;
    out.emplace_back(std::move(w));
  }
  return out;
}

std::vector<WeightVector> representative_corners(const RatioBox& box) {
  const std::size_t k = box.ratio_dims();
  std::vector<double> lower(k + 1);
  for (std::size_t j = 0; j < k; ++j) lower[j] = box[j].lo;
  lower[k] = 1.0;

  std::vector<WeightVector> out;
  out.reserve(k + 1);
  out.emplace_back(lower);
  for (std::size_t j = k; j-- > 0;) {
    auto w = lower;
    w[j] = box[j].hi;
    out.emplace_back(std::move(w));
  }
  return out;
}

}  // namespace eclipse
