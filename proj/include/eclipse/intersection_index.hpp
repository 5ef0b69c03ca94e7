#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <variant>
#include <vector>

#include "eclipse/geometry.hpp"

namespace eclipse {

struct QuadtreeOptions {
  /// A node with more hyperplanes than this is split; 0 picks default_quadtree_capacity.
  std::size_t capacity = 0;
  /// Nodes at this depth stay leaves whatever they hold.
  std::size_t max_depth = 32;
  /// A split that would take the total leaf entries past this is not made;
  /// 0 allows max(2^22, 64 N).
  std::size_t max_entries = 0;

  friend bool operator==(const QuadtreeOptions&, const QuadtreeOptions&) = default;
};

/// Hyperplane octree ("line quadtree" in the plane) over pair hyperplanes. Each node
/// is a box; internal nodes have 2^dims children covering the halves of their box;
/// leaves list every hyperplane that touches their closed box.
class LineQuadtree {
 public:
  static LineQuadtree build(HyperplaneSet planes, Box bounds, QuadtreeOptions options = {});

  /// Deduplicated union of the lists of every leaf overlapping q. Superset of crossing(q).
  std::vector<std::uint32_t> candidates(const Box& q) const;

  /// Hyperplanes cutting the interior of q, ascending. q must lie inside bounds().
  std::vector<std::uint32_t> crossing(const Box& q) const;

  const HyperplaneSet& planes() const noexcept { return planes_; }
  const Box& bounds() const noexcept { return bounds_; }
  const QuadtreeOptions& options() const noexcept { return options_; }

  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t leaf_count() const noexcept;
  std::size_t depth() const noexcept;
  std::size_t entry_count() const noexcept { return entries_.size(); }
  std::size_t max_leaf_load() const noexcept;

  /// `ECLIPSE-QT v1` text format.
  void write(std::ostream& out) const;
  static LineQuadtree read(std::istream& in);

  friend bool operator==(const LineQuadtree&, const LineQuadtree&) = default;

 private:
  struct Node {
    std::uint32_t first_child = 0;  // 0 for leaves (the root is never a child)
    std::uint32_t depth = 0;
    std::uint32_t begin = 0;  // entry range, leaves only
    std::uint32_t end = 0;
    friend bool operator==(const Node&, const Node&) = default;
  };

  Box node_box(std::size_t i) const;

  HyperplaneSet planes_;
  Box bounds_;
  QuadtreeOptions options_;
  std::vector<Node> nodes_;
  std::vector<double> boxes_;  // lo then hi per node
  std::vector<std::uint32_t> entries_;
};

struct CuttingOptions {
  /// Hard cap on Voronoi sites regardless of t^dims.
  std::size_t max_sites = 1024;
  /// Sampling attempts per requested site before giving up.
  std::size_t attempts_per_site = 32;
};

/// Randomised cutting: up to t^dims vertices of the hyperplane arrangement are sampled
/// (each the common point of dims random hyperplanes inside the bounds), their Voronoi
/// cells partition the bounds, and each cell lists every hyperplane touching it.
/// A bounding-volume tree over the cells answers box queries; each tree node also keeps
/// the union of its cells' lists, used whole when the node lies inside the query box.
class Cutting {
 public:
  static Cutting build(HyperplaneSet planes, Box bounds, std::size_t t, std::uint64_t seed,
                       CuttingOptions options = {});

  std::vector<std::uint32_t> candidates(const Box& q) const;
  std::vector<std::uint32_t> crossing(const Box& q) const;

  const HyperplaneSet& planes() const noexcept { return planes_; }
  const Box& bounds() const noexcept { return bounds_; }
  std::size_t t() const noexcept { return t_; }
  std::uint64_t seed() const noexcept { return seed_; }

  std::size_t site_count() const noexcept { return sites_.size() / std::max<std::size_t>(bounds_.dims(), 1); }
  std::size_t region_count() const noexcept { return region_ranges_.size(); }
  std::size_t entry_count() const noexcept { return entries_.size(); }
  /// Largest number of hyperplanes listed for one region.
  std::size_t max_region_load() const noexcept;
  std::vector<std::uint32_t> region_list(std::size_t region) const;
  Box region_box(std::size_t region) const;

  /// `ECLIPSE-CUT v1 seed=<s> t=<t>` text format.
  void write(std::ostream& out) const;
  static Cutting read(std::istream& in);

  friend bool operator==(const Cutting&, const Cutting&) = default;

 private:
  struct TreeNode {
    std::uint32_t left = 0, right = 0;  // children; both 0 for leaves
    std::uint32_t begin = 0, end = 0;   // region range into order_, leaves only
    friend bool operator==(const TreeNode&, const TreeNode&) = default;
  };

  void build_tree();
  void build_unions();

  HyperplaneSet planes_;
  Box bounds_;
  std::size_t t_ = 1;
  std::uint64_t seed_ = 0;
  std::vector<double> sites_;
  std::vector<double> region_boxes_;  // lo then hi per region
  std::vector<std::pair<std::uint32_t, std::uint32_t>> region_ranges_;
  std::vector<std::uint32_t> entries_;
  std::vector<TreeNode> tree_;
  std::vector<double> tree_boxes_;
  std::vector<std::uint32_t> order_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> node_ranges_;
  std::vector<std::uint32_t> node_entries_;
};

/// Either realisation of the Intersection Index. Queries reaching outside the indexed
/// bounds fall back to a scan of every hyperplane, so results stay exact.
class IntersectionIndexHD {
 public:
  IntersectionIndexHD(LineQuadtree tree) : impl_(std::move(tree)), fingerprint_(planes().fingerprint()) {}
  IntersectionIndexHD(Cutting cutting) : impl_(std::move(cutting)), fingerprint_(planes().fingerprint()) {}

  bool is_quadtree() const noexcept { return std::holds_alternative<LineQuadtree>(impl_); }
  const LineQuadtree* quadtree() const noexcept { return std::get_if<LineQuadtree>(&impl_); }
  const Cutting* cutting() const noexcept { return std::get_if<Cutting>(&impl_); }

  const HyperplaneSet& planes() const noexcept;
  const Box& bounds() const noexcept;
  /// planes().fingerprint(), computed once.
  std::uint64_t fingerprint() const noexcept { return fingerprint_; }

  std::vector<std::uint32_t> crossing(const Box& q) const;

  void write(std::ostream& out) const;
  /// Reads either format, dispatching on the header.
  static IntersectionIndexHD read(std::istream& in);

 private:
  std::variant<LineQuadtree, Cutting> impl_;
  std::uint64_t fingerprint_;
};

/// Hyperplanes of `planes` cutting the interior of q, by linear scan.
std::vector<std::uint32_t> scan_crossing(const HyperplaneSet& planes, const Box& q);

/// max(16, ceil(N^(1 - 1/dims))). A fixed small capacity makes leaves shrink like 1/N,
/// so the leaf count grows like N^dims.
std::size_t default_quadtree_capacity(std::size_t hyperplanes, std::size_t dims);

/// Default cutting parameter: ceil(sqrt(N)), reduced until t^dims fits max_sites.
std::size_t default_cutting_t(std::size_t hyperplanes, std::size_t dims, std::size_t max_sites = 1024);

}  // namespace eclipse
