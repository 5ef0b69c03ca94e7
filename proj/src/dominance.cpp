#include "eclipse/dominance.hpp"

#include <algorithm>
#include <limits>

namespace eclipse {

namespace {

void check_pair(const PointView& p, const PointView& q) {
  if (p.id == q.id) throw ContractError("dominance test on a point with itself");
  if (p.dim() != q.dim()) throw ContractError("dominance test on points of different dimension");
}

// Corner score of p selected by mask (same bit layout as corner_weights).
double corner_score(std::span<const double> p, const RatioBox& box, std::size_t mask) {
  const std::size_t k = box.ratio_dims();
  double s = p[k];
  for (std::size_t j = 0; j < k; ++j) {
    const bool hi = (mask >> (k - 1 - j)) & 1u;
    s += p[j] * (hi ? box[j].hi : box[j].lo);
  }
  return s;
}

// Early exit on the first corner where p scores worse than q.
bool dominates_unchecked(std::span<const double> p, std::span<const double> q,
                         const RatioBox& box) {
  const std::size_t corners = std::size_t{1} << box.ratio_dims();
  bool strict = false;
  for (std::size_t mask = 0; mask < corners; ++mask) {
    const double sp = corner_score(p, box, mask);
    const double sq = corner_score(q, box, mask);
    if (sp > sq) return false;
    if (sp < sq) strict = true;
  }
  return strict;
}

}  // namespace

bool eclipse_dominates(const PointView& p, const PointView& q, const RatioBox& box) {
  check_pair(p, q);
  if (p.dim() != box.dim()) throw ContractError("ratio box dimension does not match points");
  return dominates_unchecked(p.coords, q.coords, box);
}

bool eclipse_dominates(std::span<const double> p, std::span<const double> q, const RatioBox& box) {
  if (p.size() != box.dim() || q.size() != box.dim()) throw ContractError("ratio box dimension does not match points");
  return dominates_unchecked(p, q, box);
}

bool skyline_dominates(const PointView& p, const PointView& q) {
  check_pair(p, q);
  bool strict = false;
  for (std::size_t j = 0; j < p.dim(); ++j) {
    if (p[j] > q[j]) return false;
    if (p[j] < q[j]) strict = true;
  }
  return strict;
}

std::vector<PointId> nn_point(const Dataset& data, const WeightVector& w) {
  if (w.dim() != data.dim()) throw ContractError("weight vector dimension does not match data");
  double best = std::numeric_limits<double>::infinity();
  std::vector<PointId> out;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double s = score(data.row(i), w.values());
    if (s < best) {
      best = s;
      out.clear();
    }
    if (s == best) out.push_back(data.id(i));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<PointId> eclipse_baseline(const Dataset& data, const RatioBox& box) {
  if (box.dim() != data.dim()) throw ContractError("ratio box dimension does not match data");
  std::vector<PointId> out;
  const std::size_t n = data.size();
  for (std::size_t i = 0; i < n; ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < n && !dominated; ++j) {
      if (j == i) continue;
      dominated = dominates_unchecked(data.row(j), data.row(i), box);
    }
    if (!dominated) out.push_back(data.id(i));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace eclipse
