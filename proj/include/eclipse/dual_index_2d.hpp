#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "eclipse/core.hpp"

namespace eclipse {

/// Dual of a 2D point p: the line y = p[1] x - p[2]. At x = -r its |y| is the score
/// of p under weights (r, 1).
struct DualLine {
  double slope;
  double intercept;
  PointId source_id;

  double at(double x) const noexcept { return slope * x + intercept; }
};

DualLine dual_line(const PointView& p);

/// Crossing of two dual lines; a < b are positions in OrderVectorIndex2D::lines().
struct IntersectionRecord {
  double x;
  std::uint32_t a;
  std::uint32_t b;
};

/// Which counter a crossing pair decrements during a query.
enum class PairRule {
  /// Compare the ranks copied at the start of the query (default).
  Snapshot,
  /// Compare the counters as they are being decremented.
  MutatedCounters,
};

struct Query2DStats {
  std::size_t interval = 0;    ///< order-vector interval holding -l
  std::size_t m = 0;           ///< crossing pairs in range: neither member dominates the other
  std::size_t decrements = 0;  ///< counters actually decremented
};

struct Index2DOptions {
  /// Upper bound on (intervals * u) rank entries held in memory.
  std::size_t max_rank_entries = std::size_t{1} << 26;
};

/// Order Vector Index for d = 2, built over the skyline of a dataset.
///
/// The x-axis is cut at the K distinct intersection abscissas v_1 < ... < v_K of the
/// dual lines. Interval i covers (v_i, v_{i+1}] (unbounded at both ends) and stores,
/// for every line, how many lines are strictly closer to the x-axis inside it. The
/// sorted intersection list doubles as the Intersection Index.
class OrderVectorIndex2D {
 public:
  static OrderVectorIndex2D build(const Dataset& data, Index2DOptions options = {});

  /// Eclipse points for ratio range [l, h], ids ascending. Needs 0 <= l <= h, h > 0.
  std::vector<PointId> query(double l, double h, PairRule rule = PairRule::Snapshot,
                             Query2DStats* stats = nullptr) const;

  std::size_t u() const noexcept { return lines_.size(); }
  std::size_t interval_count() const noexcept { return boundaries_.size() + 1; }

  const std::vector<DualLine>& lines() const noexcept { return lines_; }
  const std::vector<IntersectionRecord>& intersections() const noexcept { return intersections_; }
  const std::vector<double>& boundaries() const noexcept { return boundaries_; }

  std::span<const std::uint32_t> order_vector(std::size_t interval) const noexcept {
    return {ranks_.data() + interval * u(), u()};
  }

  /// Interval (v_i, v_{i+1}] that contains x.
  std::size_t interval_of(double x) const noexcept;

  /// Interior abscissa used to rank the lines of an interval.
  double sample_point(std::size_t interval) const noexcept;

  /// Text format, header `ECLIPSE-IDX2D v1 u=<u>`; doubles are written with 17
  /// significant digits so a write/read cycle reproduces every value bit for bit.
  void write(std::ostream& out) const;
  static OrderVectorIndex2D read(std::istream& in);

  friend bool operator==(const OrderVectorIndex2D& x, const OrderVectorIndex2D& y);

 private:
  void index_intervals(Index2DOptions options);

  std::vector<DualLine> lines_;
  std::vector<IntersectionRecord> intersections_;
  std::vector<double> boundaries_;
  std::vector<std::uint32_t> ranks_;  // interval-major, u entries per interval
};

inline OrderVectorIndex2D build_index_2d(const Dataset& data) { return OrderVectorIndex2D::build(data); }

inline std::vector<PointId> query_index_2d(const OrderVectorIndex2D& index, double l, double h) {
  return index.query(l, h);
}

/// "Strictly closer" ranks of values: rank[k] = #{j : value[j] < value[k]}.
std::vector<std::uint32_t> strict_ranks(std::span<const double> values);

}  // namespace eclipse
