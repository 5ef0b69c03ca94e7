#pragma once

#include <vector>

#include "eclipse/core.hpp"

namespace eclipse {

/// Image of a point under an intercept or corner-score mapping.
struct MappedPoint {
  std::vector<double> c;
  PointId source_id;
};

/// c[1] = p[1] + p[2] / h, c[2] = l p[1] + p[2]: the smaller intercepts of the two
/// domination lines with slopes -h and -l.
MappedPoint map_point_2d(const PointView& p, double l, double h);

/// d-dimensional intercept vector built from the d representative corners:
/// c[d] = sum_{j<d} l_j p[j] + p[d] and, for j < d,
/// c[j] = (p[d] + h_j p[j] + sum_{k<d, k!=j} l_k p[k]) / h_j.
/// Reduces to map_point_2d for d = 2.
MappedPoint map_point_highd(const PointView& p, const RatioBox& box);

/// Scores of p at all 2^(d-1) box corners, in corner_weights order. Coordinatewise
/// dominance between images is exactly eclipse-dominance between the points.
MappedPoint corner_image(const PointView& p, const RatioBox& box);

/// Eclipse points via a skyline of mapped images; ids ascending, identical to
/// eclipse_baseline. d = 2 uses the intercept map; d >= 3 first reduces to the skyline
/// of the data and then takes the skyline of the corner images.
/// Requires every h_j > 0.
std::vector<PointId> eclipse_transform(const Dataset& data, const RatioBox& box);

/// Skyline of the d-dimensional intercept images alone. For d >= 3 the d corners do not
/// pin down the remaining ones, so this can drop true eclipse points; the result is
/// always a subset of eclipse_baseline.
std::vector<PointId> eclipse_transform_intercepts(const Dataset& data, const RatioBox& box);

}  // namespace eclipse
