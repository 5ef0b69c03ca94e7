#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "eclipse/core.hpp"
#include "eclipse/dual_index_2d.hpp"
#include "eclipse/dual_index_hd.hpp"
#include "eclipse/intersection_index.hpp"

namespace eclipse {

enum class Algorithm { Base, Tran, Quad, Cutting };

/// "BASE", "TRAN", "QUAD", "CUTTING".
std::string_view to_string(Algorithm algo) noexcept;
/// Case-insensitive base|tran|quad|cutting.
std::optional<Algorithm> parse_algorithm(std::string_view name) noexcept;

struct IndexBuildOptions {
  Index2DOptions two_d;
  IndexHDOptions hd;
  QuadtreeOptions quadtree;
  CuttingOptions cutting;
  /// 0 picks default_cutting_t.
  std::size_t cutting_t = 0;
  std::uint64_t seed = 0;
};

/// A dual-space index of either kind. For d = 2 both kinds use the 2D index, whose
/// sorted intersection list already answers range queries in logarithmic time.
class EclipseIndex {
 public:
  /// algo must be Quad or Cutting.
  static EclipseIndex build(const Dataset& data, Algorithm algo, const IndexBuildOptions& options = {});

  std::vector<PointId> query(const RatioBox& box, std::size_t* m = nullptr) const;

  Algorithm algorithm() const noexcept { return algo_; }
  std::size_t dim() const noexcept;
  std::size_t u() const noexcept;

  const OrderVectorIndex2D* index_2d() const noexcept { return two_d_ ? &*two_d_ : nullptr; }
  const OrderVectorIndexHD* order_vectors() const noexcept { return ovi_ ? &*ovi_ : nullptr; }
  const IntersectionIndexHD* intersections() const noexcept { return ii_ ? &*ii_ : nullptr; }

  /// `ECLIPSE-INDEX v1 algo=<quad|cutting>` followed by the component files.
  void write(std::ostream& out) const;
  static EclipseIndex read(std::istream& in);

 private:
  Algorithm algo_ = Algorithm::Quad;
  std::optional<OrderVectorIndex2D> two_d_;
  std::optional<OrderVectorIndexHD> ovi_;
  std::optional<IntersectionIndexHD> ii_;
};

/// One-shot eclipse query with any algorithm; indexed algorithms build and discard an index.
std::vector<PointId> eclipse_query(const Dataset& data, const RatioBox& box, Algorithm algo,
                                   const IndexBuildOptions& options = {});

}  // namespace eclipse
