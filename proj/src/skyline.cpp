#include "eclipse/skyline.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>

namespace eclipse {

namespace {

using Index = std::uint32_t;

class Maxima {
 public:
  Maxima(std::span<const double> rows, std::size_t k, std::size_t base_case)
      : rows_(rows), k_(k), base_case_(std::max<std::size_t>(base_case, 2)) {}

  std::vector<std::size_t> run(std::size_t n) {
    removed_.assign(n, 0);
    std::vector<Index> all(n);
    std::iota(all.begin(), all.end(), Index{0});
    auto sky = solve(std::move(all), 0);
    std::vector<std::size_t> out(sky.begin(), sky.end());
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  double at(Index i, std::size_t dim) const { return rows_[i * k_ + dim]; }

  // a <= b on dims [from, k) and a < b on one of them.
  bool dominates(Index a, Index b, std::size_t from) const {
    bool strict = false;
    for (std::size_t j = from; j < k_; ++j) {
      const double x = at(a, j), y = at(b, j);
      if (x > y) return false;
      if (x < y) strict = true;
    }
    return strict;
  }

  bool weakly_below(Index a, Index b, std::size_t from) const {
    for (std::size_t j = from; j < k_; ++j) {
      if (at(a, j) > at(b, j)) return false;
    }
    return true;
  }

  // Skyline of s over dims [dim, k); members of s agree on every dim before `dim`.
  std::vector<Index> solve(std::vector<Index> s, std::size_t dim) {
    while (true) {
      if (dim == k_ || s.size() <= 1) return s;
      if (s.size() <= base_case_) return scan(s, dim);
      std::sort(s.begin(), s.end(), [&](Index a, Index b) { return at(a, dim) < at(b, dim); });
      if (at(s.front(), dim) == at(s.back(), dim)) {
        ++dim;
        continue;
      }
      break;
    }

    const double median = at(s[s.size() / 2], dim);
    auto split = std::partition_point(s.begin(), s.end(), [&](Index i) { return at(i, dim) < median; });
    if (split == s.begin()) {
      const double lowest = at(s.front(), dim);
      split = std::partition_point(s.begin(), s.end(), [&](Index i) { return at(i, dim) <= lowest; });
    }
    std::vector<Index> low(s.begin(), split);
    std::vector<Index> high(split, s.end());
    s.clear();
    s.shrink_to_fit();

    auto low_sky = solve(std::move(low), dim);
    auto high_sky = solve(std::move(high), dim);
    // Every low point is strictly smaller on `dim`, so only weak dominance is left to test.
    filter(low_sky, high_sky, dim + 1);
    for (Index b : high_sky) {
      if (!removed_[b]) low_sky.push_back(b);
    }
    return low_sky;
  }

  std::vector<Index> scan(const std::vector<Index>& s, std::size_t dim) const {
    std::vector<Index> out;
    for (Index b : s) {
      bool dominated = false;
      for (Index a : s) {
        if (a != b && dominates(a, b, dim)) {
          dominated = true;
          break;
        }
      }
      if (!dominated) out.push_back(b);
    }
    return out;
  }

  // Marks every b in `bs` for which some a in `as` is weakly below on dims [dim, k).
  void filter(std::vector<Index> as, std::vector<Index> bs, std::size_t dim) {
    std::erase_if(bs, [&](Index b) { return removed_[b] != 0; });
    if (as.empty() || bs.empty()) return;
    if (dim == k_) {
      for (Index b : bs) removed_[b] = 1;
      return;
    }
    if (dim + 1 == k_) {
      double lowest = std::numeric_limits<double>::infinity();
      for (Index a : as) lowest = std::min(lowest, at(a, dim));
      for (Index b : bs) {
        if (at(b, dim) >= lowest) removed_[b] = 1;
      }
      return;
    }
    if (dim + 2 == k_) {
      sweep_filter(as, bs, dim);
      return;
    }
    if (as.size() * bs.size() <= base_case_ * base_case_) {
      for (Index b : bs) {
        for (Index a : as) {
          if (weakly_below(a, b, dim)) {
            removed_[b] = 1;
            break;
          }
        }
      }
      return;
    }

    std::vector<double> values;
    values.reserve(as.size() + bs.size());
    for (Index a : as) values.push_back(at(a, dim));
    for (Index b : bs) values.push_back(at(b, dim));
    auto mid = values.begin() + static_cast<std::ptrdiff_t>(values.size() / 2);
    std::nth_element(values.begin(), mid, values.end());
    double pivot = *mid;
    const double top = *std::max_element(values.begin(), values.end());
    if (pivot == top) {
      double below = -std::numeric_limits<double>::infinity();
      for (double v : values) {
        if (v < top) below = std::max(below, v);
      }
      if (below == -std::numeric_limits<double>::infinity()) {
        filter(std::move(as), std::move(bs), dim + 1);
        return;
      }
      pivot = below;
    }

    std::vector<Index> a_low, a_high, b_low, b_high;
    for (Index a : as) (at(a, dim) <= pivot ? a_low : a_high).push_back(a);
    for (Index b : bs) (at(b, dim) <= pivot ? b_low : b_high).push_back(b);
    as.clear();
    bs.clear();
    filter(a_low, b_low, dim);
    filter(a_high, b_high, dim);
    filter(std::move(a_low), std::move(b_high), dim + 1);
  }

  // Two dims left: sort by the first, sweep keeping the smallest second coordinate of `as`.
  void sweep_filter(const std::vector<Index>& as, const std::vector<Index>& bs, std::size_t dim) {
    struct Item {
      double key;
      bool is_a;
      Index idx;
    };
    std::vector<Item> items;
    items.reserve(as.size() + bs.size());
    for (Index a : as) items.push_back({at(a, dim), true, a});
    for (Index b : bs) items.push_back({at(b, dim), false, b});
    std::sort(items.begin(), items.end(), [](const Item& x, const Item& y) {
      if (x.key != y.key) return x.key < y.key;
      return x.is_a && !y.is_a;
    });
    double lowest = std::numeric_limits<double>::infinity();
    for (const auto& it : items) {
      if (it.is_a) {
        lowest = std::min(lowest, at(it.idx, dim + 1));
      } else if (lowest <= at(it.idx, dim + 1)) {
        removed_[it.idx] = 1;
      }
    }
  }

  std::span<const double> rows_;
  std::size_t k_;
  std::size_t base_case_;
  std::vector<unsigned char> removed_;
};

SkylineResult to_result(const Dataset& data, std::vector<std::size_t> positions) {
  SkylineResult r;
  r.ids.reserve(positions.size());
  for (std::size_t pos : positions) r.ids.push_back(data.id(pos));
  std::sort(r.ids.begin(), r.ids.end());
  r.positions = std::move(positions);
  return r;
}

}  // namespace

std::vector<std::size_t> skyline_rows_2d(std::span<const double> rows, std::size_t n) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (rows[2 * a] != rows[2 * b]) return rows[2 * a] < rows[2 * b];
    return rows[2 * a + 1] < rows[2 * b + 1];
  });
  std::vector<std::size_t> out;
  double best_y = std::numeric_limits<double>::infinity();
  std::size_t last = n;
  for (std::size_t i : order) {
    const double x = rows[2 * i], y = rows[2 * i + 1];
    const bool duplicate_of_last =
        last != n && rows[2 * last] == x && rows[2 * last + 1] == y;
    if (y < best_y || duplicate_of_last) {
      out.push_back(i);
      best_y = y;
      last = i;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> skyline_rows(std::span<const double> rows, std::size_t n, std::size_t k,
                                      SkylineOptions options) {
  if (k == 0 || rows.size() != n * k) throw ContractError("skyline: row buffer does not match n * k");
  if (n == 0) return {};
  return Maxima(rows, k, options.base_case).run(n);
}

SkylineResult skyline_2d(const Dataset& data) {
  if (data.dim() != 2) throw ContractError("skyline_2d requires d = 2");
  return to_result(data, skyline_rows_2d(data.coords(), data.size()));
}

SkylineResult skyline_highd(const Dataset& data, SkylineOptions options) {
  return to_result(data, skyline_rows(data.coords(), data.size(), data.dim(), options));
}

SkylineResult skyline(const Dataset& data) {
  return data.dim() == 2 ? skyline_2d(data) : skyline_highd(data);
}

}  // namespace eclipse
