#pragma once

#include <span>
#include <vector>

#include "eclipse/core.hpp"

namespace eclipse {

enum class DominanceKind { OneNN, Skyline, Eclipse };

/// p eclipse-dominates q: score(p) <= score(q) at every corner of the ratio box and
/// strictly smaller at one corner at least. Checking corners is enough because the
/// score difference is affine in the ratios.
///
/// Throws ContractError when p and q share an id or their dimensions disagree with the box.
bool eclipse_dominates(const PointView& p, const PointView& q, const RatioBox& box);

/// The same test on raw coordinates, without the id check. Indexes use it so that their
/// answers round exactly like eclipse_baseline.
bool eclipse_dominates(std::span<const double> p, std::span<const double> q, const RatioBox& box);

/// Coordinatewise: p <= q everywhere and p < q somewhere.
bool skyline_dominates(const PointView& p, const PointView& q);

/// Ids of every point attaining the minimum score under w, ascending.
std::vector<PointId> nn_point(const Dataset& data, const WeightVector& w);

/// Pairwise corner check over all points. O(n^2 2^(d-1)); ids ascending.
std::vector<PointId> eclipse_baseline(const Dataset& data, const RatioBox& box);

}  // namespace eclipse
