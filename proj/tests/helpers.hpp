#pragma once

#include <algorithm>
#include <vector>

#include "eclipse/core.hpp"
#include "eclipse/datagen.hpp"
#include "eclipse/random.hpp"

namespace testing {

using namespace eclipse;

/// p1(1,6), p2(4,4), p3(6,1), p4(8,5) with ids 1..4.
inline Dataset running_example() {
  return Dataset(2, {1, 2, 3, 4}, {1, 6, 4, 4, 6, 1, 8, 5});
}

inline RatioBox box_of(std::size_t d, double lo, double hi) { return RatioBox::uniform(d, lo, hi); }

inline const double kBoxes[4][2] = {{0.18, 5.67}, {0.36, 2.75}, {0.58, 1.73}, {0.84, 1.19}};

/// Coordinatewise pairwise scan.
inline std::vector<PointId> skyline_oracle(const Dataset& data) {
  std::vector<PointId> out;
  for (std::size_t i = 0; i < data.size(); ++i) {
    bool dominated = false;
    for (std::size_t k = 0; k < data.size() && !dominated; ++k) {
      if (k == i) continue;
      bool le = true, lt = false;
      for (std::size_t j = 0; j < data.dim(); ++j) {
        le = le && data.row(k)[j] <= data.row(i)[j];
        lt = lt || data.row(k)[j] < data.row(i)[j];
      }
      dominated = le && lt;
    }
    if (!dominated) out.push_back(data.id(i));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Random ratio box inside [0, 4] per dimension.
inline RatioBox random_box(Rng& rng, std::size_t d) {
  std::vector<RatioInterval> iv;
  for (std::size_t j = 0; j + 1 < d; ++j) {
    double a = 4.0 * rng.uniform(), b = 4.0 * rng.uniform();
    if (a > b) std::swap(a, b);
    iv.push_back({a, b});
  }
  return RatioBox(iv);
}

inline std::vector<double> sample_ratios(Rng& rng, const RatioBox& box) {
  std::vector<double> r;
  for (const auto& iv : box.intervals()) r.push_back(iv.lo + (iv.hi - iv.lo) * rng.uniform());
  return r;
}

inline bool is_subset(const std::vector<PointId>& a, const std::vector<PointId>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace testing
