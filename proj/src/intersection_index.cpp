#include "eclipse/intersection_index.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <istream>
#include <iterator>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>

#include "convex_cell.hpp"
#include "eclipse/error.hpp"
#include "eclipse/random.hpp"
#include "index_text.hpp"

namespace eclipse {

namespace {

constexpr double kTouchTolerance = 1e-9;
constexpr std::size_t kTreeLeaf = 4;
constexpr std::size_t kEntriesPerPlane = 64;
constexpr std::size_t kMinEntryBudget = std::size_t{1} << 22;

class Marks {
 public:
  explicit Marks(std::size_t n) : seen_(n, 0) {}
  void add(const std::uint32_t* b, const std::uint32_t* e) {
    for (; b != e; ++b) count_ += !std::exchange(seen_[*b], 1);
  }
  bool full() const noexcept { return count_ == seen_.size(); }
  std::vector<std::uint32_t> ids() const {
    std::vector<std::uint32_t> out;
    out.reserve(count_);
    for (std::size_t i = 0; i < seen_.size(); ++i) {
      if (seen_[i]) out.push_back(static_cast<std::uint32_t>(i));
    }
    return out;
  }

 private:
  std::vector<std::uint8_t> seen_;
  std::size_t count_ = 0;
};

std::vector<std::uint32_t> filter_crossing(const HyperplaneSet& planes, std::vector<std::uint32_t> ids,
                                           const Box& q) {
  std::erase_if(ids, [&](std::uint32_t i) { return !planes.crosses(i, q); });
  return ids;
}

void push_box(std::vector<double>& flat, const Box& b) {
  flat.insert(flat.end(), b.lo.begin(), b.lo.end());
  flat.insert(flat.end(), b.hi.begin(), b.hi.end());
}

Box flat_box(const std::vector<double>& flat, std::size_t i, std::size_t dims) {
  const auto* p = flat.data() + 2 * dims * i;
  return {std::vector<double>(p, p + dims), std::vector<double>(p + dims, p + 2 * dims)};
}

bool flat_inside(const std::vector<double>& flat, std::size_t i, const Box& q) {
  const std::size_t dims = q.dims();
  const auto* lo = flat.data() + 2 * dims * i;
  const auto* hi = lo + dims;
  for (std::size_t j = 0; j < dims; ++j) {
    if (lo[j] < q.lo[j] || hi[j] > q.hi[j]) return false;
  }
  return true;
}

bool flat_overlaps(const std::vector<double>& flat, std::size_t i, const Box& q) {
  const std::size_t dims = q.dims();
  const auto* lo = flat.data() + 2 * dims * i;
  const auto* hi = lo + dims;
  for (std::size_t j = 0; j < dims; ++j) {
    if (q.hi[j] < lo[j] || q.lo[j] > hi[j]) return false;
  }
  return true;
}

void check_bounds(const HyperplaneSet& planes, const Box& bounds) {
  if (bounds.dims() == 0 || bounds.dims() != planes.dims()) {
    throw ContractError("index bounds must match the hyperplane dimension");
  }
  for (std::size_t j = 0; j < bounds.dims(); ++j) {
    if (!std::isfinite(bounds.lo[j]) || !std::isfinite(bounds.hi[j]) || !(bounds.lo[j] < bounds.hi[j])) {
      throw ContractError("index bounds must be finite with lo < hi");
    }
  }
}

std::vector<std::string> header(std::istream& in, text::TokenReader& rd, const char* magic) {
  auto t = rd.expect_line("header");
  if (t.size() < 2 || t[0] != magic || t[1] != "v1") rd.fail(std::string("expected '") + magic + " v1' header");
  (void)in;
  return t;
}

void write_entries(std::ostream& out, const std::vector<std::uint32_t>& entries) {
  out << "entries " << entries.size() << '\n';
  for (std::size_t i = 0; i < entries.size(); i += 32) {
    const std::size_t end = std::min(entries.size(), i + 32);
    for (std::size_t k = i; k < end; ++k) out << (k == i ? "" : " ") << entries[k];
    out << '\n';
  }
}

std::vector<std::uint32_t> read_entries(text::TokenReader& rd, std::size_t limit) {
  const std::size_t count = rd.section("entries");
  std::vector<std::uint32_t> entries;
  entries.reserve(count);
  while (entries.size() < count) {
    for (const auto& tok : rd.expect_line("entries")) {
      const auto v = rd.integer(tok);
      if (v >= limit) rd.fail("entry out of range");
      entries.push_back(static_cast<std::uint32_t>(v));
    }
  }
  if (entries.size() != count) rd.fail("entry count mismatch");
  return entries;
}

}  // namespace

std::vector<std::uint32_t> scan_crossing(const HyperplaneSet& planes, const Box& q) {
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < planes.size(); ++i) {
    if (planes.crosses(i, q)) out.push_back(static_cast<std::uint32_t>(i));
  }
  return out;
}

std::size_t default_quadtree_capacity(std::size_t hyperplanes, std::size_t dims) {
  const double n = static_cast<double>(std::max<std::size_t>(hyperplanes, 1));
  const double c = std::ceil(std::pow(n, 1.0 - 1.0 / static_cast<double>(std::max<std::size_t>(dims, 1))));
  return std::max<std::size_t>(16, static_cast<std::size_t>(c));
}

std::size_t default_cutting_t(std::size_t hyperplanes, std::size_t dims, std::size_t max_sites) {
  std::size_t t = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(hyperplanes))));
  t = std::max<std::size_t>(t, 1);
  auto fits = [&](std::size_t base) {
    std::size_t p = 1;
    for (std::size_t j = 0; j < dims; ++j) {
      if (p > max_sites / base) return false;
      p *= base;
    }
    return p <= max_sites;
  };
  while (t > 1 && !fits(t)) --t;
  return t;
}

// ---------------------------------------------------------------- quadtree

LineQuadtree LineQuadtree::build(HyperplaneSet planes, Box bounds, QuadtreeOptions options) {
  check_bounds(planes, bounds);
  if (options.capacity == 0) options.capacity = default_quadtree_capacity(planes.size(), planes.dims());
  if (options.max_entries == 0) options.max_entries = std::max<std::size_t>(kMinEntryBudget, kEntriesPerPlane * planes.size());
  LineQuadtree qt;
  qt.planes_ = std::move(planes);
  qt.bounds_ = std::move(bounds);
  qt.options_ = options;
  const std::size_t dims = qt.bounds_.dims();
  const std::size_t fan = std::size_t{1} << dims;

  std::vector<std::uint32_t> all;
  for (std::size_t i = 0; i < qt.planes_.size(); ++i) {
    if (qt.planes_.touches(i, qt.bounds_)) all.push_back(static_cast<std::uint32_t>(i));
  }
  qt.nodes_.push_back({});
  push_box(qt.boxes_, qt.bounds_);

  // Breadth-first, so the entry budget is spent evenly; children are allocated as a
  // block when the parent splits. `total` counts the entries of every current leaf.
  struct Work {
    std::uint32_t node;
    std::vector<std::uint32_t> list;
  };
  std::deque<Work> queue;
  std::size_t total = all.size();
  queue.push_back({0, std::move(all)});
  std::vector<std::vector<std::uint32_t>> subs(fan);
  while (!queue.empty()) {
    Work w = std::move(queue.front());
    queue.pop_front();
    bool split = w.list.size() > options.capacity && qt.nodes_[w.node].depth < options.max_depth;
    const Box box = qt.node_box(w.node);
    if (split) {
      std::size_t grown = 0;
      for (std::size_t c = 0; c < fan; ++c) {
        const Box child = box.child(c);
        subs[c].clear();
        for (auto i : w.list) {
          if (qt.planes_.touches(i, child)) subs[c].push_back(i);
        }
        grown += subs[c].size();
      }
      split = total - w.list.size() + grown <= options.max_entries;
      if (split) total = total - w.list.size() + grown;
    }
    if (!split) {
      Node& node = qt.nodes_[w.node];
      node.begin = static_cast<std::uint32_t>(qt.entries_.size());
      qt.entries_.insert(qt.entries_.end(), w.list.begin(), w.list.end());
      node.end = static_cast<std::uint32_t>(qt.entries_.size());
      continue;
    }
    const auto first = static_cast<std::uint32_t>(qt.nodes_.size());
    const std::uint32_t depth = qt.nodes_[w.node].depth + 1;
    qt.nodes_[w.node].first_child = first;
    for (std::size_t c = 0; c < fan; ++c) {
      qt.nodes_.push_back({0, depth, 0, 0});
      push_box(qt.boxes_, box.child(c));
      queue.push_back({static_cast<std::uint32_t>(first + c), std::move(subs[c])});
      subs[c] = {};
    }
  }
  return qt;
}

Box LineQuadtree::node_box(std::size_t i) const { return flat_box(boxes_, i, bounds_.dims()); }

std::vector<std::uint32_t> LineQuadtree::candidates(const Box& q) const {
  if (q.dims() != bounds_.dims()) throw ContractError("query box dimension mismatch");
  if (nodes_.empty()) return {};
  Marks marks(planes_.size());
  const std::size_t fan = std::size_t{1} << bounds_.dims();
  std::vector<std::uint32_t> stack{0};
  while (!stack.empty() && !marks.full()) {
    const auto i = stack.back();
    stack.pop_back();
    if (!flat_overlaps(boxes_, i, q)) continue;
    const Node& n = nodes_[i];
    if (n.first_child == 0) {
      marks.add(entries_.data() + n.begin, entries_.data() + n.end);
    } else {
      for (std::size_t c = 0; c < fan; ++c) stack.push_back(static_cast<std::uint32_t>(n.first_child + c));
    }
  }
  return marks.ids();
}

std::vector<std::uint32_t> LineQuadtree::crossing(const Box& q) const {
  if (!bounds_.contains(q)) return scan_crossing(planes_, q);
  return filter_crossing(planes_, candidates(q), q);
}

std::size_t LineQuadtree::leaf_count() const noexcept {
  return static_cast<std::size_t>(std::count_if(nodes_.begin(), nodes_.end(), [](const Node& n) {
    return n.first_child == 0;
  }));
}

std::size_t LineQuadtree::depth() const noexcept {
  std::size_t d = 0;
  for (const auto& n : nodes_) d = std::max<std::size_t>(d, n.depth);
  return d;
}

std::size_t LineQuadtree::max_leaf_load() const noexcept {
  std::size_t m = 0;
  for (const auto& n : nodes_) {
    if (n.first_child == 0) m = std::max<std::size_t>(m, n.end - n.begin);
  }
  return m;
}

void LineQuadtree::write(std::ostream& out) const {
  const std::size_t dims = bounds_.dims();
  out << "ECLIPSE-QT v1\n";
  out << "options " << options_.capacity << ' ' << options_.max_depth << ' ' << options_.max_entries << '\n';
  text::write_box(out, bounds_);
  text::write_planes(out, planes_);
  out << "nodes " << nodes_.size() << '\n';
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    out << n.first_child << ' ' << n.depth << ' ' << n.begin << ' ' << n.end << ' ';
    text::write_numbers(out, std::span<const double>(boxes_.data() + 2 * dims * i, 2 * dims));
    out << '\n';
  }
  write_entries(out, entries_);
}

LineQuadtree LineQuadtree::read(std::istream& in) {
  text::TokenReader rd(in);
  header(in, rd, "ECLIPSE-QT");
  LineQuadtree qt;
  auto opt = rd.expect_line("options");
  if (opt.size() != 4 || opt[0] != "options") rd.fail("expected 'options <capacity> <max_depth> <max_entries>'");
  qt.options_ = {rd.integer(opt[1]), rd.integer(opt[2]), rd.integer(opt[3])};
  qt.bounds_ = text::read_box(rd);
  const std::size_t dims = qt.bounds_.dims();
  if (dims == 0) rd.fail("empty bounds");
  qt.planes_ = text::read_planes(rd, dims);
  const std::size_t count = rd.section("nodes");
  if (count == 0) rd.fail("quadtree without nodes");
  const std::size_t fan = std::size_t{1} << dims;
  for (std::size_t i = 0; i < count; ++i) {
    auto t = rd.expect_line("node");
    if (t.size() != 4 + 2 * dims) rd.fail("node needs: first_child depth begin end box");
    Node n{static_cast<std::uint32_t>(rd.integer(t[0])), static_cast<std::uint32_t>(rd.integer(t[1])),
           static_cast<std::uint32_t>(rd.integer(t[2])), static_cast<std::uint32_t>(rd.integer(t[3]))};
    if (n.first_child != 0 && (n.first_child <= i || n.first_child + fan > count)) rd.fail("bad child index");
    if (n.begin > n.end) rd.fail("bad entry range");
    qt.nodes_.push_back(n);
    for (std::size_t k = 0; k < 2 * dims; ++k) qt.boxes_.push_back(rd.number(t[4 + k]));
  }
  qt.entries_ = read_entries(rd, qt.planes_.size());
  for (const auto& n : qt.nodes_) {
    if (n.end > qt.entries_.size()) rd.fail("node entry range past the end");
  }
  return qt;
}

// ---------------------------------------------------------------- cutting

namespace {

/// Solves the dims x dims system sum_j c_ij x_j = b_i by elimination with partial
/// pivoting. False when the system is numerically singular.
bool solve(std::vector<double>& a, std::vector<double>& b, std::size_t n, std::vector<double>& x) {
  double scale = 0.0;
  for (double v : a) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return false;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
    }
    if (std::abs(a[piv * n + col]) <= 1e-12 * scale) return false;
    if (piv != col) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a[piv * n + k], a[col * n + k]);
      std::swap(b[piv], b[col]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r * n + col] / a[col * n + col];
      if (f == 0.0) continue;
      for (std::size_t k = col; k < n; ++k) a[r * n + k] -= f * a[col * n + k];
      b[r] -= f * b[col];
    }
  }
  x.assign(n, 0.0);
  for (std::size_t r = n; r-- > 0;) {
    double s = b[r];
    for (std::size_t k = r + 1; k < n; ++k) s -= a[r * n + k] * x[k];
    x[r] = s / a[r * n + r];
    if (!std::isfinite(x[r])) return false;
  }
  return true;
}

std::vector<double> sample_sites(const HyperplaneSet& planes, const Box& bounds, std::size_t target,
                                 std::size_t attempts, std::uint64_t seed) {
  const std::size_t dims = bounds.dims();
  std::vector<std::vector<double>> found;
  const std::size_t n = planes.size();
  if (n >= dims) {
    Rng rng(seed);
    std::vector<std::uint32_t> pick;
    std::vector<double> a, b, x;
    for (std::size_t attempt = 0; attempt < target * attempts && found.size() < target; ++attempt) {
      pick.clear();
      while (pick.size() < dims) {
        const auto i = static_cast<std::uint32_t>(rng.below(n));
        if (std::find(pick.begin(), pick.end(), i) == pick.end()) pick.push_back(i);
      }
      a.clear();
      b.clear();
      for (auto i : pick) {
        const auto c = planes.coeffs(i);
        a.insert(a.end(), c.begin(), c.end());
        b.push_back(planes.offset(i));
      }
      if (!solve(a, b, dims, x) || !bounds.contains(x)) continue;
      found.push_back(x);
      if (found.size() == target) {
        std::sort(found.begin(), found.end());
        found.erase(std::unique(found.begin(), found.end()), found.end());
      }
    }
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
  }
  if (found.empty()) found.push_back(bounds.center());
  std::vector<double> flat;
  for (const auto& s : found) flat.insert(flat.end(), s.begin(), s.end());
  return flat;
}

double dist_sq(const double* a, const double* b, std::size_t dims) {
  double d = 0.0;
  for (std::size_t j = 0; j < dims; ++j) d += (a[j] - b[j]) * (a[j] - b[j]);
  return d;
}

}  // namespace

Cutting Cutting::build(HyperplaneSet planes, Box bounds, std::size_t t, std::uint64_t seed, CuttingOptions options) {
  check_bounds(planes, bounds);
  if (t == 0) throw ContractError("cutting parameter t must be positive");
  if (options.max_sites == 0) throw ContractError("cutting needs at least one site");
  Cutting cut;
  cut.planes_ = std::move(planes);
  cut.bounds_ = std::move(bounds);
  cut.t_ = t;
  cut.seed_ = seed;
  const std::size_t dims = cut.bounds_.dims();

  std::size_t target = 1;
  for (std::size_t j = 0; j < dims && target < options.max_sites; ++j) {
    target = target > options.max_sites / t ? options.max_sites : target * t;
  }
  target = std::min(target, options.max_sites);
  cut.sites_ = sample_sites(cut.planes_, cut.bounds_, target, std::max<std::size_t>(options.attempts_per_site, 1),
                            seed);
  const std::size_t sites = cut.site_count();

  std::vector<std::uint32_t> others(sites);
  std::vector<double> normal(dims);
  std::vector<std::uint32_t> list;
  std::vector<double> values;
  for (std::size_t s = 0; s < sites; ++s) {
    const double* me = cut.sites_.data() + s * dims;
    std::iota(others.begin(), others.end(), 0u);
    std::vector<double> d2(sites);
    for (std::size_t o = 0; o < sites; ++o) d2[o] = dist_sq(me, cut.sites_.data() + o * dims, dims);
    std::sort(others.begin(), others.end(), [&](auto x, auto y) { return d2[x] < d2[y] || (d2[x] == d2[y] && x < y); });

    detail::ConvexCell cell(cut.bounds_);
    for (auto o : others) {
      if (o == s) continue;
      // A bisector farther than the farthest vertex cannot cut the cell.
      if (d2[o] / 4.0 > cell.max_distance_sq(std::span<const double>(me, dims))) break;
      const double* other = cut.sites_.data() + o * dims;
      double rhs = 0.0;
      for (std::size_t j = 0; j < dims; ++j) {
        normal[j] = other[j] - me[j];
        rhs += (other[j] * other[j] - me[j] * me[j]) / 2.0;
      }
      cell.clip(normal, rhs);
      if (cell.empty()) break;
    }
    if (cell.empty()) continue;

    const Box bb = cell.bounding_box();
    list.clear();
    for (std::size_t i = 0; i < cut.planes_.size(); ++i) {
      if (!cut.planes_.touches(i, bb)) continue;
      const auto c = cut.planes_.coeffs(i);
      double scale = std::abs(cut.planes_.offset(i));
      for (std::size_t j = 0; j < dims; ++j) {
        scale += std::abs(c[j]) * std::max(std::abs(bb.lo[j]), std::abs(bb.hi[j]));
      }
      const double tol = kTouchTolerance * scale;
      const double offset = cut.planes_.offset(i);
      bool below = false, above = false;
      for (std::size_t v = 0; v < cell.vertex_count() && !(below && above); ++v) {
        const auto x = cell.vertex(v);
        double val = -offset;
        for (std::size_t j = 0; j < dims; ++j) val += c[j] * x[j];
        below = below || val <= tol;
        above = above || val >= -tol;
      }
      if (below && above) list.push_back(static_cast<std::uint32_t>(i));
    }
    const auto begin = static_cast<std::uint32_t>(cut.entries_.size());
    cut.entries_.insert(cut.entries_.end(), list.begin(), list.end());
    cut.region_ranges_.emplace_back(begin, static_cast<std::uint32_t>(cut.entries_.size()));
    push_box(cut.region_boxes_, bb);
  }
  cut.build_tree();
  return cut;
}

void Cutting::build_tree() {
  const std::size_t dims = bounds_.dims();
  tree_.clear();
  tree_boxes_.clear();
  node_ranges_.clear();
  node_entries_.clear();
  order_.resize(region_count());
  std::iota(order_.begin(), order_.end(), 0u);
  if (order_.empty()) return;

  std::vector<double> centers(order_.size() * dims);
  for (std::size_t r = 0; r < order_.size(); ++r) {
    const double* lo = region_boxes_.data() + 2 * dims * r;
    for (std::size_t j = 0; j < dims; ++j) centers[r * dims + j] = lo[j] + (lo[dims + j] - lo[j]) / 2.0;
  }

  auto enclose = [&](std::uint32_t begin, std::uint32_t end) {
    Box b{std::vector<double>(dims, HUGE_VAL), std::vector<double>(dims, -HUGE_VAL)};
    for (auto k = begin; k < end; ++k) {
      const double* lo = region_boxes_.data() + 2 * dims * order_[k];
      for (std::size_t j = 0; j < dims; ++j) {
        b.lo[j] = std::min(b.lo[j], lo[j]);
        b.hi[j] = std::max(b.hi[j], lo[dims + j]);
      }
    }
    return b;
  };

  struct Work {
    std::uint32_t node, begin, end;
  };
  tree_.push_back({});
  push_box(tree_boxes_, enclose(0, static_cast<std::uint32_t>(order_.size())));
  std::vector<Work> stack{{0, 0, static_cast<std::uint32_t>(order_.size())}};
  while (!stack.empty()) {
    const Work w = stack.back();
    stack.pop_back();
    if (w.end - w.begin <= kTreeLeaf) {
      tree_[w.node].begin = w.begin;
      tree_[w.node].end = w.end;
      continue;
    }
    std::size_t axis = 0;
    double widest = -1.0;
    for (std::size_t j = 0; j < dims; ++j) {
      double lo = HUGE_VAL, hi = -HUGE_VAL;
      for (auto k = w.begin; k < w.end; ++k) {
        lo = std::min(lo, centers[order_[k] * dims + j]);
        hi = std::max(hi, centers[order_[k] * dims + j]);
      }
      if (hi - lo > widest) {
        widest = hi - lo;
        axis = j;
      }
    }
    const std::uint32_t mid = w.begin + (w.end - w.begin) / 2;
    std::nth_element(order_.begin() + w.begin, order_.begin() + mid, order_.begin() + w.end,
                     [&](std::uint32_t a, std::uint32_t b) {
                       const double ca = centers[a * dims + axis], cb = centers[b * dims + axis];
                       return ca < cb || (ca == cb && a < b);
                     });
    const auto left = static_cast<std::uint32_t>(tree_.size());
    tree_.push_back({});
    push_box(tree_boxes_, enclose(w.begin, mid));
    const auto right = static_cast<std::uint32_t>(tree_.size());
    tree_.push_back({});
    push_box(tree_boxes_, enclose(mid, w.end));
    tree_[w.node].left = left;
    tree_[w.node].right = right;
    stack.push_back({left, w.begin, mid});
    stack.push_back({right, mid, w.end});
  }
  build_unions();
}

void Cutting::build_unions() {
  node_ranges_.assign(tree_.size(), {});
  node_entries_.clear();
  std::vector<std::vector<std::uint32_t>> unions(tree_.size());
  for (std::size_t i = tree_.size(); i-- > 0;) {
    const TreeNode& n = tree_[i];
    auto& u = unions[i];
    if (n.left == 0 && n.right == 0) {
      for (auto k = n.begin; k < n.end; ++k) {
        const auto [b, e] = region_ranges_[order_[k]];
        u.insert(u.end(), entries_.begin() + b, entries_.begin() + e);
      }
      std::sort(u.begin(), u.end());
      u.erase(std::unique(u.begin(), u.end()), u.end());
    } else {
      auto& l = unions[n.left];
      auto& r = unions[n.right];
      std::set_union(l.begin(), l.end(), r.begin(), r.end(), std::back_inserter(u));
      std::vector<std::uint32_t>().swap(l);
      std::vector<std::uint32_t>().swap(r);
    }
    const auto begin = static_cast<std::uint32_t>(node_entries_.size());
    node_entries_.insert(node_entries_.end(), u.begin(), u.end());
    node_ranges_[i] = {begin, static_cast<std::uint32_t>(node_entries_.size())};
  }
}

std::vector<std::uint32_t> Cutting::candidates(const Box& q) const {
  if (q.dims() != bounds_.dims()) throw ContractError("query box dimension mismatch");
  Marks marks(planes_.size());
  if (tree_.empty()) return marks.ids();
  std::vector<std::uint32_t> stack{0}, partial;
  while (!stack.empty() && !marks.full()) {
    const auto i = stack.back();
    stack.pop_back();
    if (!flat_overlaps(tree_boxes_, i, q)) continue;
    if (flat_inside(tree_boxes_, i, q)) {
      const auto [b, e] = node_ranges_[i];
      marks.add(node_entries_.data() + b, node_entries_.data() + e);
      continue;
    }
    const TreeNode& n = tree_[i];
    if (n.left == 0 && n.right == 0) {
      for (auto k = n.begin; k < n.end; ++k) {
        if (flat_overlaps(region_boxes_, order_[k], q)) partial.push_back(order_[k]);
      }
    } else {
      stack.push_back(n.left);
      stack.push_back(n.right);
    }
  }
  for (auto r : partial) {
    if (marks.full()) break;
    const auto [b, e] = region_ranges_[r];
    marks.add(entries_.data() + b, entries_.data() + e);
  }
  return marks.ids();
}

std::vector<std::uint32_t> Cutting::crossing(const Box& q) const {
  if (!bounds_.contains(q)) return scan_crossing(planes_, q);
  return filter_crossing(planes_, candidates(q), q);
}

std::size_t Cutting::max_region_load() const noexcept {
  std::size_t m = 0;
  for (auto [b, e] : region_ranges_) m = std::max<std::size_t>(m, e - b);
  return m;
}

std::vector<std::uint32_t> Cutting::region_list(std::size_t region) const {
  const auto [b, e] = region_ranges_.at(region);
  return {entries_.begin() + b, entries_.begin() + e};
}

Box Cutting::region_box(std::size_t region) const {
  if (region >= region_count()) throw ContractError("region index out of range");
  return flat_box(region_boxes_, region, bounds_.dims());
}

void Cutting::write(std::ostream& out) const {
  const std::size_t dims = bounds_.dims();
  out << "ECLIPSE-CUT v1 seed=" << seed_ << " t=" << t_ << '\n';
  text::write_box(out, bounds_);
  text::write_planes(out, planes_);
  out << "sites " << site_count() << '\n';
  for (std::size_t s = 0; s < site_count(); ++s) {
    text::write_numbers(out, std::span<const double>(sites_.data() + s * dims, dims));
    out << '\n';
  }
  out << "regions " << region_count() << '\n';
  for (std::size_t r = 0; r < region_count(); ++r) {
    text::write_numbers(out, std::span<const double>(region_boxes_.data() + 2 * dims * r, 2 * dims));
    out << '\n';
    const auto [b, e] = region_ranges_[r];
    text::write_indices(out, std::span<const std::uint32_t>(entries_.data() + b, e - b));
  }
}

Cutting Cutting::read(std::istream& in) {
  text::TokenReader rd(in);
  auto h = header(in, rd, "ECLIPSE-CUT");
  if (h.size() != 4) rd.fail("expected 'ECLIPSE-CUT v1 seed=<s> t=<t>'");
  Cutting cut;
  cut.seed_ = rd.keyed(h[2], "seed");
  cut.t_ = rd.keyed(h[3], "t");
  if (cut.t_ == 0) rd.fail("t must be positive");
  cut.bounds_ = text::read_box(rd);
  const std::size_t dims = cut.bounds_.dims();
  if (dims == 0) rd.fail("empty bounds");
  cut.planes_ = text::read_planes(rd, dims);
  const std::size_t sites = rd.section("sites");
  for (std::size_t s = 0; s < sites; ++s) {
    auto xs = text::read_numbers(rd, dims, "site");
    cut.sites_.insert(cut.sites_.end(), xs.begin(), xs.end());
  }
  const std::size_t regions = rd.section("regions");
  for (std::size_t r = 0; r < regions; ++r) {
    auto bb = text::read_numbers(rd, 2 * dims, "region box");
    cut.region_boxes_.insert(cut.region_boxes_.end(), bb.begin(), bb.end());
    auto list = text::read_indices(rd, cut.planes_.size(), "region list");
    const auto begin = static_cast<std::uint32_t>(cut.entries_.size());
    cut.entries_.insert(cut.entries_.end(), list.begin(), list.end());
    cut.region_ranges_.emplace_back(begin, static_cast<std::uint32_t>(cut.entries_.size()));
  }
  cut.build_tree();
  return cut;
}

// ---------------------------------------------------------------- wrapper

const HyperplaneSet& IntersectionIndexHD::planes() const noexcept {
  return std::visit([](const auto& x) -> const HyperplaneSet& { return x.planes(); }, impl_);
}

const Box& IntersectionIndexHD::bounds() const noexcept {
  return std::visit([](const auto& x) -> const Box& { return x.bounds(); }, impl_);
}

std::vector<std::uint32_t> IntersectionIndexHD::crossing(const Box& q) const {
  return std::visit([&](const auto& x) { return x.crossing(q); }, impl_);
}

void IntersectionIndexHD::write(std::ostream& out) const {
  std::visit([&](const auto& x) { x.write(out); }, impl_);
}

IntersectionIndexHD IntersectionIndexHD::read(std::istream& in) {
  std::string all{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  std::istringstream ss(all);
  if (all.starts_with("ECLIPSE-QT")) return LineQuadtree::read(ss);
  if (all.starts_with("ECLIPSE-CUT")) return Cutting::read(ss);
  throw ParseError(1, "unknown intersection index header");
}

}  // namespace eclipse
