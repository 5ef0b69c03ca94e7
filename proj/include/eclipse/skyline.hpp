#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "eclipse/core.hpp"

namespace eclipse {

/// Skyline members of a Dataset. `positions` index rows of the input, ascending;
/// `ids` are the matching point ids, ascending.
struct SkylineResult {
  std::vector<std::size_t> positions;
  std::vector<PointId> ids;

  std::size_t u() const noexcept { return positions.size(); }
};

struct SkylineOptions {
  /// Subproblems at or below this size are solved by a pairwise scan.
  std::size_t base_case = 32;
};

/// Sort-and-sweep skyline for d = 2 (minimisation). Duplicates of a skyline point are all kept.
SkylineResult skyline_2d(const Dataset& data);

/// Divide-and-conquer maxima (split on one coordinate, merge by a dominance filter in
/// the remaining coordinates). Works for any d >= 2.
SkylineResult skyline_highd(const Dataset& data, SkylineOptions options = {});

/// Dispatches to skyline_2d or skyline_highd.
SkylineResult skyline(const Dataset& data);

/// Skyline of `n` rows of width `k` stored row-major. Returns row positions, ascending.
/// Rows may hold arbitrary finite values; used on mapped images.
std::vector<std::size_t> skyline_rows_2d(std::span<const double> rows, std::size_t n);
std::vector<std::size_t> skyline_rows(std::span<const double> rows, std::size_t n, std::size_t k,
                                      SkylineOptions options = {});

}  // namespace eclipse
