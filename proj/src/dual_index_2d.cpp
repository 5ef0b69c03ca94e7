#include "eclipse/dual_index_2d.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <string>
#include <tuple>
#include <unordered_map>

#include "eclipse/dominance.hpp"
#include "eclipse/skyline.hpp"
#include "settle.hpp"
#include "text_io.hpp"

namespace eclipse {

namespace {

constexpr double kEdgeSlack = 1e-9;

}  // namespace

DualLine dual_line(const PointView& p) {
  if (p.dim() != 2) throw ContractError("dual_line requires d = 2");
  return {p[0], -p[1], p.id};
}

std::vector<std::uint32_t> strict_ranks(std::span<const double> values) {
  std::vector<std::uint32_t> order(values.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] < values[b]; });
  std::vector<std::uint32_t> rank(values.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const bool tied = i > 0 && values[order[i]] == values[order[i - 1]];
    rank[order[i]] = tied ? rank[order[i - 1]] : static_cast<std::uint32_t>(i);
  }
  return rank;
}

OrderVectorIndex2D OrderVectorIndex2D::build(const Dataset& data, Index2DOptions options) {
  if (data.dim() != 2) throw ContractError("build_index_2d requires d = 2");
  const auto sky = skyline_2d(data);

  std::vector<std::size_t> by_id = sky.positions;
  std::sort(by_id.begin(), by_id.end(), [&](auto a, auto b) { return data.id(a) < data.id(b); });

  OrderVectorIndex2D idx;
  idx.lines_.reserve(by_id.size());
  for (std::size_t pos : by_id) idx.lines_.push_back(dual_line(data[pos]));

  const auto u = static_cast<std::uint32_t>(idx.lines_.size());
  for (std::uint32_t a = 0; a < u; ++a) {
    for (std::uint32_t b = a + 1; b < u; ++b) {
      const auto& la = idx.lines_[a];
      const auto& lb = idx.lines_[b];
      if (la.slope == lb.slope) continue;  // parallel: identical skyline points
      idx.intersections_.push_back({(lb.intercept - la.intercept) / (la.slope - lb.slope), a, b});
    }
  }
  std::sort(idx.intersections_.begin(), idx.intersections_.end(), [](const auto& x, const auto& y) {
    return std::tie(x.x, x.a, x.b) < std::tie(y.x, y.a, y.b);
  });
  idx.index_intervals(options);
  return idx;
}

void OrderVectorIndex2D::index_intervals(Index2DOptions options) {
  boundaries_.clear();
  for (const auto& rec : intersections_) {
    if (boundaries_.empty() || boundaries_.back() != rec.x) boundaries_.push_back(rec.x);
  }
  const std::size_t intervals = boundaries_.size() + 1;
  if (intervals > options.max_rank_entries / std::max<std::size_t>(u(), 1)) {
    throw IndexTooLarge("2D order vector index would need " + std::to_string(intervals) +
                        " intervals of " + std::to_string(u()) +
                        " ranks; use the transform algorithm instead");
  }
  ranks_.clear();
  ranks_.reserve(intervals * u());
  std::vector<double> closeness(u());
  for (std::size_t i = 0; i < intervals; ++i) {
    const double x = sample_point(i);
    for (std::size_t k = 0; k < u(); ++k) closeness[k] = std::abs(lines_[k].at(x));
    const auto r = strict_ranks(closeness);
    ranks_.insert(ranks_.end(), r.begin(), r.end());
  }
}

std::size_t OrderVectorIndex2D::interval_of(double x) const noexcept {
  return static_cast<std::size_t>(std::lower_bound(boundaries_.begin(), boundaries_.end(), x) -
                                  boundaries_.begin());
}

double OrderVectorIndex2D::sample_point(std::size_t interval) const noexcept {
  const std::size_t k = boundaries_.size();
  if (k == 0) return -1.0;
  if (interval == 0) return boundaries_.front() - 1.0;
  if (interval == k) {
    const double v = boundaries_.back();
    return v < 0.0 ? std::min(v / 2.0, v + 1.0) : v + 1.0;
  }
  return boundaries_[interval - 1] + (boundaries_[interval] - boundaries_[interval - 1]) / 2.0;
}

std::vector<PointId> OrderVectorIndex2D::query(double l, double h, PairRule rule,
                                               Query2DStats* stats) const {
  if (!(h > 0.0) || l < 0.0 || l > h || !std::isfinite(h)) {
    throw ContractError("query_index_2d needs 0 <= l <= h and h > 0");
  }
  const std::size_t interval = interval_of(-l);
  const auto initial = order_vector(interval);
  std::vector<std::uint32_t> ov(initial.begin(), initial.end());
  std::size_t m = 0, decrements = 0;

  if (rule == PairRule::MutatedCounters) {
    // Crossings exactly at -h or -l keep a weak order over the closed range: not flips.
    // A single-point range is the exception: pairs crossing there tie.
    auto first = std::upper_bound(intersections_.begin(), intersections_.end(), -h,
                                  [](double x, const IntersectionRecord& r) { return x < r.x; });
    auto last = std::lower_bound(intersections_.begin(), intersections_.end(), -l,
                                 [](const IntersectionRecord& r, double x) { return r.x < x; });
    if (l == h) {
      first = last;
      last = std::upper_bound(first, intersections_.end(), -l,
                              [](double x, const IntersectionRecord& r) { return x < r.x; });
    }
    for (auto it = first; it < last; ++it, ++m) {
      if (ov[it->a] < ov[it->b]) {
        if (ov[it->b] > 0) --ov[it->b], ++decrements;
      } else if (ov[it->a] > 0) {
        --ov[it->a], ++decrements;
      }
    }
  } else {
    // Every crossing within rounding distance of [-h, -l] is settled by the corner test
    // itself, so results round exactly like the baseline near the range ends.
    const double lo = -h - kEdgeSlack * std::max(1.0, h);
    const double hi = -l + kEdgeSlack * std::max(1.0, h);
    auto first = std::lower_bound(intersections_.begin(), intersections_.end(), lo,
                                  [](const IntersectionRecord& r, double x) { return r.x < x; });
    auto last = std::upper_bound(first, intersections_.end(), hi,
                                 [](double x, const IntersectionRecord& r) { return x < r.x; });
    const RatioBox box({{l, h}});
    for (auto it = first; it < last; ++it) {
      const auto& la = lines_[it->a];
      const auto& lb = lines_[it->b];
      const double pa[] = {la.slope, -la.intercept}, pb[] = {lb.slope, -lb.intercept};
      const bool ab = eclipse_dominates(pa, pb, box), ba = eclipse_dominates(pb, pa, box);
      const std::size_t dec = detail::settle(ov[it->b], initial[it->a] < initial[it->b], ab) +
                              detail::settle(ov[it->a], initial[it->b] < initial[it->a], ba);
      if (!ab && !ba) ++m, decrements += dec;
    }
  }

  std::vector<PointId> out;
  for (std::size_t k = 0; k < u(); ++k) {
    if (ov[k] == 0) out.push_back(lines_[k].source_id);
  }
  std::sort(out.begin(), out.end());
  if (stats) *stats = {interval, m, decrements};
  return out;
}

void OrderVectorIndex2D::write(std::ostream& out) const {
  using text::format_double;
  out << "ECLIPSE-IDX2D v1 u=" << u() << '\n';
  out << "lines " << u() << '\n';
  for (const auto& l : lines_) {
    out << l.source_id << ' ' << format_double(l.slope) << ' ' << format_double(l.intercept) << '\n';
  }
  out << "intersections " << intersections_.size() << '\n';
  for (const auto& r : intersections_) {
    out << format_double(r.x) << ' ' << lines_[r.a].source_id << ' ' << lines_[r.b].source_id << '\n';
  }
  out << "intervals " << interval_count() << '\n';
  for (std::size_t i = 0; i < interval_count(); ++i) {
    auto ov = order_vector(i);
    for (std::size_t k = 0; k < ov.size(); ++k) out << (k ? " " : "") << ov[k];
    out << '\n';
  }
}

OrderVectorIndex2D OrderVectorIndex2D::read(std::istream& in) {
  text::TokenReader rd(in);
  auto header = rd.expect_line("header");
  if (header.size() != 3 || header[0] != "ECLIPSE-IDX2D" || header[1] != "v1") {
    rd.fail("not an ECLIPSE-IDX2D v1 file");
  }
  const std::size_t u = rd.keyed(header[2], "u");

  OrderVectorIndex2D idx;
  if (rd.section("lines") != u) rd.fail("line count does not match header");
  std::unordered_map<PointId, std::uint32_t> local;
  for (std::size_t k = 0; k < u; ++k) {
    auto t = rd.expect_line("dual line");
    if (t.size() != 3) rd.fail("dual line needs: id slope intercept");
    DualLine l{rd.number(t[1]), rd.number(t[2]), rd.integer(t[0])};
    if (!local.emplace(l.source_id, static_cast<std::uint32_t>(k)).second) rd.fail("duplicate line id");
    idx.lines_.push_back(l);
  }

  const std::size_t m = rd.section("intersections");
  for (std::size_t i = 0; i < m; ++i) {
    auto t = rd.expect_line("intersection");
    if (t.size() != 3) rd.fail("intersection needs: x id_a id_b");
    auto a = local.find(rd.integer(t[1]));
    auto b = local.find(rd.integer(t[2]));
    if (a == local.end() || b == local.end()) rd.fail("intersection refers to an unknown line");
    IntersectionRecord r{rd.number(t[0]), std::min(a->second, b->second), std::max(a->second, b->second)};
    if (!idx.intersections_.empty() && r.x < idx.intersections_.back().x) rd.fail("intersections not sorted");
    idx.intersections_.push_back(r);
  }
  for (const auto& rec : idx.intersections_) {
    if (idx.boundaries_.empty() || idx.boundaries_.back() != rec.x) idx.boundaries_.push_back(rec.x);
  }

  if (rd.section("intervals") != idx.interval_count()) rd.fail("interval count does not match intersections");
  idx.ranks_.reserve(idx.interval_count() * u);
  for (std::size_t i = 0; i < idx.interval_count(); ++i) {
    auto t = rd.expect_line("order vector");
    if (t.size() != u) rd.fail("order vector length does not match u");
    for (const auto& tok : t) {
      const auto v = rd.integer(tok);
      if (v >= std::max<std::size_t>(u, 1)) rd.fail("rank out of range");
      idx.ranks_.push_back(static_cast<std::uint32_t>(v));
    }
  }
  return idx;
}

bool operator==(const OrderVectorIndex2D& x, const OrderVectorIndex2D& y) {
  auto same_line = [](const DualLine& a, const DualLine& b) {
    return a.slope == b.slope && a.intercept == b.intercept && a.source_id == b.source_id;
  };
  auto same_rec = [](const IntersectionRecord& a, const IntersectionRecord& b) {
    return a.x == b.x && a.a == b.a && a.b == b.b;
  };
  return std::equal(x.lines_.begin(), x.lines_.end(), y.lines_.begin(), y.lines_.end(), same_line) &&
         std::equal(x.intersections_.begin(), x.intersections_.end(), y.intersections_.begin(),
                    y.intersections_.end(), same_rec) &&
         x.boundaries_ == y.boundaries_ && x.ranks_ == y.ranks_;
}

}  // namespace eclipse
