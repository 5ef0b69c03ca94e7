#include "eclipse/dual_index_hd.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <istream>
#include <limits>
#include <ostream>
#include <string>
#include <unordered_set>

#include "eclipse/dominance.hpp"
#include "eclipse/skyline.hpp"
#include "index_text.hpp"
#include "settle.hpp"

namespace eclipse {

namespace {

constexpr std::uint32_t kInternal = std::numeric_limits<std::uint32_t>::max();
constexpr double kEdgeSlack = 1e-9;

/// Off-center witness position; a hyperplane through the exact center of a cell is common
/// (symmetric data), one through this point is not.
double witness_fraction(std::size_t j) {
  static constexpr double fractions[] = {0.5414213562373095, 0.4267949192431123, 0.5236067977499790,
                                         0.4354248688935409, 0.5645751311064591, 0.4127016653792583};
  return fractions[j % std::size(fractions)];
}

}  // namespace

OrderVectorIndexHD OrderVectorIndexHD::build(const Dataset& data, IndexHDOptions options) {
  if (data.dim() < 3) throw ContractError("the high-dimensional index needs d >= 3; use the 2D index");
  if (!(options.max_ratio > 0.0) || !std::isfinite(options.max_ratio)) {
    throw ContractError("max_ratio must be positive and finite");
  }
  const auto sky = skyline_highd(data);
  const std::size_t limit = data.dim() == 3 ? options.max_u_d3 : options.max_u_high;
  if (sky.u() > limit) {
    throw IndexTooLarge("skyline has " + std::to_string(sky.u()) + " points, the index allows " +
                        std::to_string(limit) + " for d = " + std::to_string(data.dim()) +
                        "; use the transform algorithm instead");
  }

  OrderVectorIndexHD idx;
  idx.dim_ = data.dim();
  idx.options_ = options;
  std::vector<std::size_t> by_id = sky.positions;
  std::sort(by_id.begin(), by_id.end(), [&](auto a, auto b) { return data.id(a) < data.id(b); });
  for (std::size_t pos : by_id) {
    idx.ids_.push_back(data.id(pos));
    const auto r = data.row(pos);
    idx.coords_.insert(idx.coords_.end(), r.begin(), r.end());
  }
  idx.build_planes();

  const std::size_t dims = idx.dim_ - 1;
  const std::size_t fan = std::size_t{1} << dims;
  idx.bounds_ = Box::cube(dims, -options.max_ratio, 0.0);
  idx.nodes_.push_back({});
  idx.boxes_.insert(idx.boxes_.end(), idx.bounds_.lo.begin(), idx.bounds_.lo.end());
  idx.boxes_.insert(idx.boxes_.end(), idx.bounds_.hi.begin(), idx.bounds_.hi.end());

  std::vector<std::uint32_t> all;
  for (std::size_t i = 0; i < idx.planes_.size(); ++i) {
    if (idx.planes_.touches(i, idx.bounds_)) all.push_back(static_cast<std::uint32_t>(i));
  }

  // Breadth-first, so the cell budget is spent evenly across the box.
  struct Work {
    std::uint32_t node;
    std::vector<std::uint32_t> pairs;
  };
  std::deque<Work> queue;
  queue.push_back({0, std::move(all)});
  std::size_t cells = 1;
  while (!queue.empty()) {
    Work w = std::move(queue.front());
    queue.pop_front();
    const std::uint32_t depth = idx.nodes_[w.node].depth;
    const bool split = w.pairs.size() > options.cell_capacity && depth < options.max_depth &&
                       cells + fan - 1 <= options.max_cells;
    if (!split) {
      idx.add_leaf(w.node, w.pairs);
      continue;
    }
    cells += fan - 1;
    const Box box = idx.cell_box_of_node(w.node);
    const auto first = static_cast<std::uint32_t>(idx.nodes_.size());
    idx.nodes_[w.node].first_child = first;
    for (std::size_t c = 0; c < fan; ++c) {
      const Box child = box.child(c);
      idx.nodes_.push_back({0, depth + 1});
      idx.boxes_.insert(idx.boxes_.end(), child.lo.begin(), child.lo.end());
      idx.boxes_.insert(idx.boxes_.end(), child.hi.begin(), child.hi.end());
      std::vector<std::uint32_t> sub;
      for (auto i : w.pairs) {
        if (idx.planes_.touches(i, child)) sub.push_back(i);
      }
      queue.push_back({static_cast<std::uint32_t>(first + c), std::move(sub)});
    }
  }
  idx.leaf_of_node_.resize(idx.nodes_.size(), kInternal);
  return idx;
}

void OrderVectorIndexHD::build_planes() {
  const std::size_t dims = dim_ - 1;
  planes_ = HyperplaneSet(dims);
  std::vector<double> coeffs(dims);
  for (std::size_t a = 0; a < u(); ++a) {
    const auto pa = point(a);
    for (std::size_t b = a + 1; b < u(); ++b) {
      const auto pb = point(b);
      bool any = false;
      for (std::size_t j = 0; j < dims; ++j) {
        coeffs[j] = pa[j] - pb[j];
        any = any || coeffs[j] != 0.0;
      }
      // Parallel duals only arise from identical skyline points, which never swap order.
      if (!any) continue;
      planes_.add(coeffs, pa[dims] - pb[dims], static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b));
    }
  }
  fingerprint_ = planes_.fingerprint();
}

Box OrderVectorIndexHD::cell_box_of_node(std::size_t node) const {
  const std::size_t dims = bounds_.dims();
  const auto* p = boxes_.data() + 2 * dims * node;
  return {std::vector<double>(p, p + dims), std::vector<double>(p + dims, p + 2 * dims)};
}

Box OrderVectorIndexHD::cell_box(std::size_t cell) const { return cell_box_of_node(leaf_nodes_.at(cell)); }

void OrderVectorIndexHD::add_leaf(std::size_t node, const std::vector<std::uint32_t>& pairs) {
  const Box box = cell_box_of_node(node);
  if (leaf_of_node_.size() < nodes_.size()) leaf_of_node_.resize(nodes_.size(), kInternal);
  leaf_of_node_[node] = static_cast<std::uint32_t>(leaf_nodes_.size());
  leaf_nodes_.push_back(static_cast<std::uint32_t>(node));
  std::vector<double> w(box.dims());
  for (std::size_t j = 0; j < box.dims(); ++j) w[j] = box.lo[j] + witness_fraction(j) * (box.hi[j] - box.lo[j]);
  const auto r = strict_ranks(scores_at(w));
  witnesses_.insert(witnesses_.end(), w.begin(), w.end());
  ranks_.insert(ranks_.end(), r.begin(), r.end());
  const auto begin = static_cast<std::uint32_t>(entries_.size());
  entries_.insert(entries_.end(), pairs.begin(), pairs.end());
  pair_ranges_.emplace_back(begin, static_cast<std::uint32_t>(entries_.size()));
}

DualHyperplane OrderVectorIndexHD::dual(std::size_t k) const {
  const auto p = point(k);
  return {std::vector<double>(p.begin(), p.end() - 1), p.back(), ids_[k]};
}

double OrderVectorIndexHD::score_at(std::size_t k, std::span<const double> x) const noexcept {
  const auto p = point(k);
  double s = 0.0;
  for (std::size_t j = 0; j + 1 < dim_; ++j) s += p[j] * -x[j];
  return s + p[dim_ - 1];
}

std::vector<double> OrderVectorIndexHD::scores_at(std::span<const double> x) const {
  if (x.size() + 1 != dim_) throw ContractError("dual point dimension mismatch");
  std::vector<double> s(u());
  for (std::size_t k = 0; k < u(); ++k) s[k] = score_at(k, x);
  return s;
}

std::size_t OrderVectorIndexHD::locate(std::span<const double> x) const {
  if (x.size() != bounds_.dims() || !bounds_.contains(x)) throw ContractError("locate: point outside the index bounds");
  const std::size_t dims = bounds_.dims();
  std::size_t node = 0;
  while (nodes_[node].first_child != 0) {
    const auto* lo = boxes_.data() + 2 * dims * node;
    const auto* hi = lo + dims;
    std::size_t which = 0;
    for (std::size_t j = 0; j < dims; ++j) {
      if (x[j] > lo[j] + (hi[j] - lo[j]) / 2.0) which |= std::size_t{1} << j;
    }
    node = nodes_[node].first_child + which;
  }
  return leaf_of_node_[node];
}

std::vector<std::uint32_t> OrderVectorIndexHD::ranks_at(std::span<const double> x) const {
  if (x.size() != bounds_.dims()) throw ContractError("dual point dimension mismatch");
  if (!bounds_.contains(x)) return strict_ranks(scores_at(x));
  const std::size_t cell = locate(x);
  const auto pairs = cell_pairs(cell);
  if (pairs.size() >= u()) return strict_ranks(scores_at(x));

  const auto base = cell_ranks(cell);
  std::vector<std::uint32_t> ranks(base.begin(), base.end());
  const auto w = cell_witness(cell);
  for (auto i : pairs) {
    const auto [a, b] = planes_.pair(i);
    const double wa = score_at(a, w), wb = score_at(b, w);
    if (wa < wb) --ranks[b];
    else if (wb < wa) --ranks[a];
    const double xa = score_at(a, x), xb = score_at(b, x);
    if (xa < xb) ++ranks[b];
    else if (xb < xa) ++ranks[a];
  }
  return ranks;
}

void OrderVectorIndexHD::write(std::ostream& out) const {
  using text::format_double;
  const std::size_t dims = bounds_.dims();
  out << "ECLIPSE-IDXHD v1 d=" << dim_ << " u=" << u() << '\n';
  out << "options " << format_double(options_.max_ratio) << ' ' << options_.cell_capacity << ' '
      << options_.max_depth << ' ' << options_.max_cells << ' ' << options_.max_u_d3 << ' '
      << options_.max_u_high << '\n';
  out << "points " << u() << '\n';
  for (std::size_t k = 0; k < u(); ++k) {
    out << ids_[k] << ' ';
    text::write_numbers(out, point(k));
    out << '\n';
  }
  out << "nodes " << nodes_.size() << '\n';
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    out << nodes_[i].first_child << ' ' << nodes_[i].depth << ' ';
    text::write_numbers(out, std::span<const double>(boxes_.data() + 2 * dims * i, 2 * dims));
    out << '\n';
  }
  out << "cells " << cell_count() << '\n';
  for (std::size_t c = 0; c < cell_count(); ++c) {
    out << leaf_nodes_[c] << ' ';
    text::write_numbers(out, cell_witness(c));
    out << '\n';
    const auto r = cell_ranks(c);
    for (std::size_t k = 0; k < r.size(); ++k) out << (k ? " " : "") << r[k];
    out << '\n';
    text::write_indices(out, cell_pairs(c));
  }
}

OrderVectorIndexHD OrderVectorIndexHD::read(std::istream& in) {
  text::TokenReader rd(in);
  auto h = rd.expect_line("header");
  if (h.size() != 4 || h[0] != "ECLIPSE-IDXHD" || h[1] != "v1") rd.fail("not an ECLIPSE-IDXHD v1 file");
  OrderVectorIndexHD idx;
  idx.dim_ = rd.keyed(h[2], "d");
  const std::size_t u = rd.keyed(h[3], "u");
  if (idx.dim_ < 3) rd.fail("d must be at least 3");
  const std::size_t dims = idx.dim_ - 1;

  auto opt = rd.expect_line("options");
  if (opt.size() != 7 || opt[0] != "options") rd.fail("expected 'options' with 6 values");
  idx.options_ = {rd.number(opt[1]), rd.integer(opt[2]), rd.integer(opt[3]),
                  rd.integer(opt[4]), rd.integer(opt[5]), rd.integer(opt[6])};
  if (!(idx.options_.max_ratio > 0.0) || !std::isfinite(idx.options_.max_ratio)) rd.fail("bad max_ratio");

  if (rd.section("points") != u) rd.fail("point count does not match header");
  std::unordered_set<PointId> seen;
  for (std::size_t k = 0; k < u; ++k) {
    auto t = rd.expect_line("point");
    if (t.size() != idx.dim_ + 1) rd.fail("point needs: id and d coordinates");
    const PointId id = rd.integer(t[0]);
    if (!seen.insert(id).second) rd.fail("duplicate point id");
    if (!idx.ids_.empty() && id < idx.ids_.back()) rd.fail("point ids not ascending");
    idx.ids_.push_back(id);
    for (std::size_t j = 0; j < idx.dim_; ++j) idx.coords_.push_back(rd.number(t[1 + j]));
  }
  idx.build_planes();
  idx.bounds_ = Box::cube(dims, -idx.options_.max_ratio, 0.0);

  const std::size_t fan = std::size_t{1} << dims;
  const std::size_t count = rd.section("nodes");
  if (count == 0) rd.fail("index without nodes");
  for (std::size_t i = 0; i < count; ++i) {
    auto t = rd.expect_line("node");
    if (t.size() != 2 + 2 * dims) rd.fail("node needs: first_child depth box");
    Node n{static_cast<std::uint32_t>(rd.integer(t[0])), static_cast<std::uint32_t>(rd.integer(t[1]))};
    if (n.first_child != 0 && (n.first_child <= i || n.first_child + fan > count)) rd.fail("bad child index");
    idx.nodes_.push_back(n);
    for (std::size_t k = 0; k < 2 * dims; ++k) idx.boxes_.push_back(rd.number(t[2 + k]));
  }
  idx.leaf_of_node_.assign(count, kInternal);

  const std::size_t cells = rd.section("cells");
  for (std::size_t c = 0; c < cells; ++c) {
    auto t = rd.expect_line("cell");
    if (t.size() != 1 + dims) rd.fail("cell needs: node witness");
    const auto node = rd.integer(t[0]);
    if (node >= count || idx.nodes_[node].first_child != 0 || idx.leaf_of_node_[node] != kInternal) {
      rd.fail("cell refers to a bad node");
    }
    idx.leaf_of_node_[node] = static_cast<std::uint32_t>(c);
    idx.leaf_nodes_.push_back(static_cast<std::uint32_t>(node));
    for (std::size_t j = 0; j < dims; ++j) idx.witnesses_.push_back(rd.number(t[1 + j]));
    auto r = rd.expect_line("ranks");
    if (r.size() != u) rd.fail("rank vector length does not match u");
    for (const auto& tok : r) {
      const auto v = rd.integer(tok);
      if (v >= u) rd.fail("rank out of range");
      idx.ranks_.push_back(static_cast<std::uint32_t>(v));
    }
    auto list = text::read_indices(rd, idx.planes_.size(), "cell pairs");
    const auto begin = static_cast<std::uint32_t>(idx.entries_.size());
    idx.entries_.insert(idx.entries_.end(), list.begin(), list.end());
    idx.pair_ranges_.emplace_back(begin, static_cast<std::uint32_t>(idx.entries_.size()));
  }
  for (std::size_t i = 0; i < count; ++i) {
    if (idx.nodes_[i].first_child == 0 && idx.leaf_of_node_[i] == kInternal) rd.fail("leaf node without a cell");
  }
  return idx;
}

LineQuadtree build_quadtree(const OrderVectorIndexHD& ovi, QuadtreeOptions options) {
  return LineQuadtree::build(ovi.planes(), ovi.bounds(), options);
}

Cutting build_cutting(const OrderVectorIndexHD& ovi, std::size_t t, std::uint64_t seed, CuttingOptions options) {
  if (t == 0) t = default_cutting_t(ovi.planes().size(), ovi.bounds().dims(), options.max_sites);
  return Cutting::build(ovi.planes(), ovi.bounds(), t, seed, options);
}

std::vector<PointId> query_index_hd(const OrderVectorIndexHD& ovi, const IntersectionIndexHD& ii,
                                    const RatioBox& box, PairRule rule, QueryHDStats* stats) {
  if (ovi.fingerprint() != ii.fingerprint()) {
    throw ContractError("order vector index and intersection index were not built together");
  }
  if (box.dim() != ovi.dim()) throw ContractError("ratio box dimension does not match the index");
  const Box q = Box::dual_of(box);
  const auto initial = ovi.ranks_at(q.center());
  std::vector<std::uint32_t> ov = initial;
  const auto& planes = ovi.planes();
  std::size_t m = 0, decrements = 0;

  if (rule == PairRule::MutatedCounters) {
    for (auto i : ii.crossing(q)) {
      const auto [a, b] = planes.pair(i);
      ++m;
      if (ov[a] < ov[b]) {
        if (ov[b] > 0) --ov[b], ++decrements;
      } else if (ov[a] > 0) {
        --ov[a], ++decrements;
      }
    }
  } else {
    // Pairs crossing within rounding distance of the box are settled by the corner test
    // itself, so results round exactly like the baseline on the box faces.
    Box wide = q;
    for (std::size_t j = 0; j < wide.dims(); ++j) {
      const double slack = kEdgeSlack * std::max(1.0, -wide.lo[j]);
      wide.lo[j] -= slack;
      // Ratio 0 is a hard edge; staying inside the index bounds keeps l = 0 queries fast.
      wide.hi[j] = std::min(wide.hi[j] + slack, std::max(q.hi[j], 0.0));
    }
    for (auto i : ii.crossing(wide)) {
      const auto [a, b] = planes.pair(i);
      const bool ab = eclipse_dominates(ovi.point(a), ovi.point(b), box);
      const bool ba = eclipse_dominates(ovi.point(b), ovi.point(a), box);
      const std::size_t dec = detail::settle(ov[b], initial[a] < initial[b], ab) +
                              detail::settle(ov[a], initial[b] < initial[a], ba);
      if (!ab && !ba) ++m, decrements += dec;
    }
  }

  std::vector<PointId> out;
  for (std::size_t k = 0; k < ovi.u(); ++k) {
    if (ov[k] == 0) out.push_back(ovi.ids()[k]);
  }
  if (stats) *stats = {m, decrements};
  return out;
}

}  // namespace eclipse
