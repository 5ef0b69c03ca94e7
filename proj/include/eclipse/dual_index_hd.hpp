#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "eclipse/core.hpp"
#include "eclipse/dual_index_2d.hpp"
#include "eclipse/geometry.hpp"
#include "eclipse/intersection_index.hpp"

namespace eclipse {

struct IndexHDOptions {
  /// Cells cover [-max_ratio, 0]^(d-1); queries reaching past it are still exact, only slower.
  double max_ratio = 8.0;
  /// A cell touched by more pair hyperplanes than this is split.
  std::size_t cell_capacity = 32;
  std::size_t max_depth = 16;
  std::size_t max_cells = 4096;
  /// Largest skyline accepted for d = 3 and for d >= 4.
  std::size_t max_u_d3 = 512;
  std::size_t max_u_high = 128;

  friend bool operator==(const IndexHDOptions&, const IndexHDOptions&) = default;
};

/// Order Vector Index for d >= 3, built over the skyline of a dataset.
///
/// The ratio space box is split recursively into cells. Every cell keeps a witness
/// point, the rank vector of the dual hyperplanes at the witness (how many are strictly
/// closer to x_d = 0) and the pair hyperplanes touching the cell. Ranks anywhere else in
/// the cell follow from the witness ranks by re-evaluating only those pairs.
class OrderVectorIndexHD {
 public:
  /// Throws ContractError for d < 3 and IndexTooLarge when the skyline exceeds the guard.
  static OrderVectorIndexHD build(const Dataset& data, IndexHDOptions options = {});

  std::size_t dim() const noexcept { return dim_; }
  std::size_t u() const noexcept { return ids_.size(); }
  /// Skyline ids ascending; position k is the k-th entry of every rank vector.
  const std::vector<PointId>& ids() const noexcept { return ids_; }
  std::span<const double> point(std::size_t k) const noexcept { return {coords_.data() + k * dim_, dim_}; }
  DualHyperplane dual(std::size_t k) const;

  /// One hyperplane per pair of skyline points whose duals intersect.
  const HyperplaneSet& planes() const noexcept { return planes_; }
  const Box& bounds() const noexcept { return bounds_; }
  const IndexHDOptions& options() const noexcept { return options_; }
  std::uint64_t fingerprint() const noexcept { return fingerprint_; }

  std::size_t cell_count() const noexcept { return leaf_nodes_.size(); }
  Box cell_box(std::size_t cell) const;
  std::span<const double> cell_witness(std::size_t cell) const noexcept {
    return {witnesses_.data() + cell * bounds_.dims(), bounds_.dims()};
  }
  std::span<const std::uint32_t> cell_ranks(std::size_t cell) const noexcept {
    return {ranks_.data() + cell * u(), u()};
  }
  std::span<const std::uint32_t> cell_pairs(std::size_t cell) const noexcept {
    const auto [b, e] = pair_ranges_[cell];
    return {entries_.data() + b, e - b};
  }

  /// Cell whose box holds x; x must lie inside bounds().
  std::size_t locate(std::span<const double> x) const;

  /// Rank vector at dual point x (ratios -x).
  std::vector<std::uint32_t> ranks_at(std::span<const double> x) const;

  /// Scores of all skyline points at dual point x.
  std::vector<double> scores_at(std::span<const double> x) const;

  /// `ECLIPSE-IDXHD v1 d=<d> u=<u>` text format. Pair hyperplanes are rebuilt on read.
  void write(std::ostream& out) const;
  static OrderVectorIndexHD read(std::istream& in);

  friend bool operator==(const OrderVectorIndexHD&, const OrderVectorIndexHD&) = default;

 private:
  struct Node {
    std::uint32_t first_child = 0;
    std::uint32_t depth = 0;
    friend bool operator==(const Node&, const Node&) = default;
  };

  void build_planes();
  Box cell_box_of_node(std::size_t node) const;
  double score_at(std::size_t k, std::span<const double> x) const noexcept;
  void add_leaf(std::size_t node, const std::vector<std::uint32_t>& pairs);

  std::size_t dim_ = 0;
  IndexHDOptions options_;
  std::vector<PointId> ids_;
  std::vector<double> coords_;
  HyperplaneSet planes_;
  std::uint64_t fingerprint_ = 0;
  Box bounds_;
  std::vector<Node> nodes_;
  std::vector<double> boxes_;  // lo then hi per node
  std::vector<std::uint32_t> leaf_of_node_;
  std::vector<std::uint32_t> leaf_nodes_;
  std::vector<double> witnesses_;
  std::vector<std::uint32_t> ranks_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pair_ranges_;
  std::vector<std::uint32_t> entries_;
};

LineQuadtree build_quadtree(const OrderVectorIndexHD& ovi, QuadtreeOptions options = {});
/// t = 0 picks default_cutting_t.
Cutting build_cutting(const OrderVectorIndexHD& ovi, std::size_t t, std::uint64_t seed, CuttingOptions options = {});

struct QueryHDStats {
  std::size_t m = 0;           ///< pair hyperplanes crossing the query box
  std::size_t decrements = 0;  ///< counters actually decremented
};

/// Eclipse points for `box`, ids ascending. The rank vector is taken at the center of
/// the dual query box and every pair crossing the box decrements the member that is
/// farther there. Throws ContractError if the indexes were not built together.
std::vector<PointId> query_index_hd(const OrderVectorIndexHD& ovi, const IntersectionIndexHD& ii,
                                    const RatioBox& box, PairRule rule = PairRule::Snapshot,
                                    QueryHDStats* stats = nullptr);

}  // namespace eclipse
