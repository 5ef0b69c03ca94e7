#pragma once

// Bounded convex polytope in vertex form, clipped one halfspace at a time.
// Every vertex remembers which constraints are tight at it; two vertices span an
// edge when they share at least dims-1 tight constraints and no other vertex is tight
// on all of them.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "eclipse/geometry.hpp"

namespace eclipse::detail {

class ConvexCell {
 public:
  explicit ConvexCell(const Box& box) : dims_(box.dims()) {
    const std::size_t corners = std::size_t{1} << dims_;
    for (std::size_t mask = 0; mask < corners; ++mask) {
      Vertex v;
      v.x.resize(dims_);
      for (std::size_t j = 0; j < dims_; ++j) {
        const bool upper = (mask >> j) & 1u;
        v.x[j] = upper ? box.hi[j] : box.lo[j];
        v.tight.push_back(static_cast<std::uint32_t>(2 * j + (upper ? 1 : 0)));
      }
      std::sort(v.tight.begin(), v.tight.end());
      vertices_.push_back(std::move(v));
    }
    next_id_ = static_cast<std::uint32_t>(2 * dims_);
    double extent = 0.0;
    for (std::size_t j = 0; j < dims_; ++j) {
      extent = std::max({extent, std::abs(box.lo[j]), std::abs(box.hi[j])});
    }
    merge_eps_ = 1e-12 * std::max(extent, 1e-300);
  }

  bool empty() const noexcept { return vertices_.empty(); }
  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::span<const double> vertex(std::size_t i) const noexcept { return vertices_[i].x; }

  /// Keeps {x : normal . x <= rhs}.
  void clip(std::span<const double> normal, double rhs) {
    const std::uint32_t id = next_id_++;
    double scale = std::abs(rhs);
    std::vector<double> side(vertices_.size());
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      double s = -rhs;
      for (std::size_t j = 0; j < dims_; ++j) {
        s += normal[j] * vertices_[i].x[j];
        scale = std::max(scale, std::abs(normal[j] * vertices_[i].x[j]));
      }
      side[i] = s;
    }
    const double eps = 1e-12 * std::max(scale, 1e-300);

    bool any_out = false, any_in = false;
    for (double s : side) {
      if (s > eps) any_out = true; else any_in = true;
    }
    if (!any_out) {
      for (std::size_t i = 0; i < vertices_.size(); ++i) {
        if (std::abs(side[i]) <= eps) add_tight(vertices_[i], id);
      }
      return;
    }
    if (!any_in) {
      vertices_.clear();
      return;
    }

    std::vector<Vertex> next;
    next.reserve(vertices_.size() + 8);
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      if (side[i] > eps) continue;
      Vertex v = vertices_[i];
      if (std::abs(side[i]) <= eps) add_tight(v, id);
      next.push_back(std::move(v));
    }
    by_constraint_.assign(next_id_, {});
    for (std::size_t k = 0; k < vertices_.size(); ++k) {
      for (auto c : vertices_[k].tight) by_constraint_[c].push_back(static_cast<std::uint32_t>(k));
    }
    std::vector<std::uint32_t> common;
    for (std::size_t o = 0; o < vertices_.size(); ++o) {
      if (side[o] <= eps) continue;
      for (std::size_t i = 0; i < vertices_.size(); ++i) {
        if (side[i] >= -eps) continue;
        common.clear();
        std::set_intersection(vertices_[i].tight.begin(), vertices_[i].tight.end(),
                              vertices_[o].tight.begin(), vertices_[o].tight.end(),
                              std::back_inserter(common));
        if (common.size() + 1 < dims_ || !adjacent(i, o, common)) continue;
        const double t = side[i] / (side[i] - side[o]);
        Vertex v;
        v.x.resize(dims_);
        for (std::size_t j = 0; j < dims_; ++j) {
          v.x[j] = vertices_[i].x[j] + t * (vertices_[o].x[j] - vertices_[i].x[j]);
        }
        v.tight = common;
        add_tight(v, id);
        next.push_back(std::move(v));
      }
    }
    vertices_ = std::move(next);
    merge_duplicates(merge_eps_);
  }

  Box bounding_box() const {
    Box b{std::vector<double>(dims_, HUGE_VAL), std::vector<double>(dims_, -HUGE_VAL)};
    for (const auto& v : vertices_) {
      for (std::size_t j = 0; j < dims_; ++j) {
        b.lo[j] = std::min(b.lo[j], v.x[j]);
        b.hi[j] = std::max(b.hi[j], v.x[j]);
      }
    }
    return b;
  }

  double max_distance_sq(std::span<const double> from) const {
    double best = 0.0;
    for (const auto& v : vertices_) {
      double d = 0.0;
      for (std::size_t j = 0; j < dims_; ++j) d += (v.x[j] - from[j]) * (v.x[j] - from[j]);
      best = std::max(best, d);
    }
    return best;
  }

 private:
  struct Vertex {
    std::vector<double> x;
    std::vector<std::uint32_t> tight;  // sorted
  };

  // Double-description adjacency test: i and o span an edge when no third vertex is
  // tight on every constraint they share.
  bool adjacent(std::size_t i, std::size_t o, const std::vector<std::uint32_t>& common) const {
    const std::vector<std::uint32_t>* rarest = &by_constraint_[common.front()];
    for (auto c : common) {
      if (by_constraint_[c].size() < rarest->size()) rarest = &by_constraint_[c];
    }
    for (auto k : *rarest) {
      if (k == i || k == o) continue;
      const auto& t = vertices_[k].tight;
      if (std::includes(t.begin(), t.end(), common.begin(), common.end())) return false;
    }
    return true;
  }

  // Degenerate inputs produce the same new vertex from several edges; merging keeps the
  // vertex count from compounding over successive clips.
  void merge_duplicates(double eps) {
    std::vector<std::uint32_t> order(vertices_.size());
    for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return vertices_[a].x[0] < vertices_[b].x[0]; });
    std::vector<char> gone(vertices_.size(), 0);
    for (std::size_t p = 0; p < order.size(); ++p) {
      if (gone[order[p]]) continue;
      auto& keep = vertices_[order[p]];
      for (std::size_t q = p + 1; q < order.size() && vertices_[order[q]].x[0] - keep.x[0] <= eps; ++q) {
        auto& v = vertices_[order[q]];
        if (gone[order[q]]) continue;
        bool same = true;
        for (std::size_t j = 1; j < dims_ && same; ++j) same = std::abs(keep.x[j] - v.x[j]) <= eps;
        if (!same) continue;
        for (auto id : v.tight) add_tight(keep, id);
        gone[order[q]] = 1;
      }
    }
    std::size_t w = 0;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      if (gone[i]) continue;
      if (w != i) vertices_[w] = std::move(vertices_[i]);
      ++w;
    }
    vertices_.resize(w);
  }

  static void add_tight(Vertex& v, std::uint32_t id) {
    auto it = std::lower_bound(v.tight.begin(), v.tight.end(), id);
    if (it == v.tight.end() || *it != id) v.tight.insert(it, id);
  }

  std::size_t dims_;
  std::vector<Vertex> vertices_;
  std::uint32_t next_id_;
  double merge_eps_;
  std::vector<std::vector<std::uint32_t>> by_constraint_;  // vertices tight on each constraint
};

}  // namespace eclipse::detail
