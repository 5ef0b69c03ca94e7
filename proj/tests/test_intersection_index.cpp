#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "eclipse/geometry.hpp"
#include "eclipse/intersection_index.hpp"
#include "eclipse/skyline.hpp"
#include "helpers.hpp"

using namespace eclipse;

namespace {

HyperplaneSet pair_planes(const Dataset& data) {
  HyperplaneSet set(data.dim() - 1);
  for (std::uint32_t a = 0; a < data.size(); ++a) {
    for (std::uint32_t b = a + 1; b < data.size(); ++b) {
      try {
        const auto h = pair_hyperplane(data[a], data[b]);
        set.add(h.coeffs, h.offset, a, b);
      } catch (const DegeneratePair&) {
      }
    }
  }
  return set;
}

HyperplaneSet skyline_planes(DistributionKind kind, std::size_t n, std::size_t d, std::uint64_t seed) {
  const auto data = generate({kind, n, d, seed});
  return pair_planes(data.subset(skyline(data).positions));
}

Box random_query(Rng& rng, std::size_t dims, double extent) {
  Box q{std::vector<double>(dims), std::vector<double>(dims)};
  for (std::size_t j = 0; j < dims; ++j) {
    double a = -extent * rng.uniform(), b = -extent * rng.uniform();
    if (a > b) std::swap(a, b);
    q.lo[j] = a, q.hi[j] = b;
  }
  return q;
}

/// Seven points on the plane x + y + z = 1: every pair plane passes through (-1, -1).
Dataset concurrent_points() {
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < 7; ++i) {
    const double a = 0.05 + 0.1 * i, b = 0.9 - 0.12 * i;
    rows.push_back({a, b * (1 - a), (1 - b) * (1 - a)});
  }
  return Dataset::from_rows(rows);
}

}  // namespace

TEST_CASE("pair hyperplanes") {
  const auto h = pair_hyperplane(Point(1, {1, 6}), Point(2, {4, 4}));
  REQUIRE(h.coeffs.size() == 1);
  CHECK(h.offset / h.coeffs[0] == doctest::Approx(-2.0 / 3.0));
  CHECK(h.id_a == 1);
  CHECK(h.id_b == 2);
  CHECK_THROWS_AS(pair_hyperplane(Point(1, {1, 2, 3}), Point(2, {1, 2, 5})), DegeneratePair);
  const auto g = pair_hyperplane(Point(1, {2, 1, 0}), Point(2, {1, 1, 1}));
  CHECK(g.coeffs == std::vector<double>{1, 0});
  CHECK(g.offset == -1);
  const std::vector<double> x{-1, 5};
  CHECK(g.value(x) == 0);
}

TEST_CASE("hyperplane box tests") {
  HyperplaneSet s(2);
  s.add(std::vector<double>{1, 0}, -1, 0, 1);
  CHECK(s.crosses(0, Box::cube(2, -2, 0)));
  CHECK_FALSE(s.crosses(0, Box::cube(2, -1, 0)));
  CHECK(s.touches(0, Box::cube(2, -1, 0)));
  CHECK_FALSE(s.touches(0, Box::cube(2, -0.5, 0)));
  const auto [lo, hi] = s.range(0, Box::cube(2, -3, 0));
  CHECK(lo == -2);
  CHECK(hi == 1);
}

TEST_CASE("quadtree shapes") {
  const Box bounds = Box::cube(2, -8, 0);
  const auto empty = LineQuadtree::build(HyperplaneSet(2), bounds);
  CHECK(empty.node_count() == 1);
  CHECK(empty.leaf_count() == 1);
  CHECK(empty.entry_count() == 0);
  CHECK(empty.crossing(Box::cube(2, -3, -1)).empty());

  // The running example lifted to d = 3 gives three pair planes x1 = -3/2, -1, -2/3.
  const auto lifted = Dataset(3, {1, 2, 3}, {1, 1, 6, 4, 1, 4, 6, 1, 1});
  const auto small = LineQuadtree::build(pair_planes(lifted), bounds, {.capacity = 3});
  CHECK(small.node_count() == 1);
  CHECK(small.entry_count() == 3);
  CHECK(small.depth() == 0);
  CHECK(small.crossing(Box{{-1.2, -2}, {-0.1, -1}}) == std::vector<std::uint32_t>{0, 1});

  const auto planes = pair_planes(concurrent_points());
  CHECK(planes.size() == 21);
  for (std::size_t max_depth : {4, 8, 12}) {
    const auto tree = LineQuadtree::build(planes, bounds, {.capacity = 3, .max_depth = max_depth});
    CHECK(tree.depth() == max_depth);
    CHECK(tree.max_leaf_load() > 3);
  }
}

TEST_CASE("quadtree leaves respect capacity below the depth cap") {
  const auto planes = skyline_planes(DistributionKind::AntiCorrelated, 300, 3, 5);
  const auto tree = LineQuadtree::build(planes, Box::cube(2, -8, 0), {.capacity = 8, .max_depth = 40, .max_entries = std::size_t{1} << 26});
  CHECK(tree.depth() < 40);
  CHECK(tree.max_leaf_load() <= 8);
}

TEST_CASE("quadtree candidates are a superset and crossing is exact") {
  Rng rng(9);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::size_t d = 3 + seed % 3;
    const auto planes = skyline_planes(DistributionKind(seed % 3), 200, d, seed);
    const auto tree = LineQuadtree::build(planes, Box::cube(d - 1, -8, 0), {.capacity = 4});
    for (int q = 0; q < 20; ++q) {
      const auto box = random_query(rng, d - 1, 8);
      const auto truth = scan_crossing(planes, box);
      auto cand = tree.candidates(box);
      std::sort(cand.begin(), cand.end());
      CHECK(std::adjacent_find(cand.begin(), cand.end()) == cand.end());
      CHECK(std::includes(cand.begin(), cand.end(), truth.begin(), truth.end()));
      CHECK(tree.crossing(box) == truth);
    }
  }
}

TEST_CASE("cutting basics") {
  const auto planes = skyline_planes(DistributionKind::Independent, 200, 3, 2);
  const Box bounds = Box::cube(2, -8, 0);
  const auto one = Cutting::build(planes, bounds, 1, 7);
  CHECK(one.region_count() == 1);
  std::vector<std::uint32_t> all(planes.size());
  std::iota(all.begin(), all.end(), 0u);
  std::vector<std::uint32_t> touching;
  for (auto i : all) {
    if (planes.touches(i, bounds)) touching.push_back(i);
  }
  CHECK(one.region_list(0) == touching);

  HyperplaneSet single(2);
  single.add(std::vector<double>{1, 1}, -2, 0, 1);
  const auto few = Cutting::build(single, bounds, 5, 1);
  CHECK(few.region_count() == 1);
  CHECK(few.region_list(0) == std::vector<std::uint32_t>{0});

  const auto a = Cutting::build(planes, bounds, 6, 11);
  const auto b = Cutting::build(planes, bounds, 6, 11);
  CHECK(a == b);
  CHECK(a.site_count() <= 36);
  CHECK_THROWS_AS(Cutting::build(planes, bounds, 0, 1), ContractError);
}

TEST_CASE("cutting of seven lines") {
  const auto planes = pair_planes(Dataset(3, {0, 1, 2, 3, 4, 5, 6},
                                          {0.1, 0.9, 0.5, 0.3, 0.6, 0.2, 0.7, 0.15, 0.4, 0.8, 0.35, 0.1,
                                           0.25, 0.5, 0.45, 0.55, 0.05, 0.9, 0.95, 0.7, 0.05}));
  std::size_t worst = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto cut = Cutting::build(planes, Box::cube(2, -8, 0), 3, seed);
    CHECK(cut.max_region_load() <= planes.size());
    worst = std::max(worst, cut.max_region_load());
  }
  MESSAGE("seven points, t = 3: ", planes.size(), " planes, worst region load ", worst);
}

TEST_CASE("cutting crossing lists are exact") {
  Rng rng(12);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::size_t d = 3 + seed % 3;
    const auto planes = skyline_planes(DistributionKind(seed % 3), 150, d, seed);
    const Box bounds = Box::cube(d - 1, -8, 0);
    const auto cut = Cutting::build(planes, bounds, default_cutting_t(planes.size(), d - 1), seed);
    for (std::size_t r = 0; r < cut.region_count(); ++r) {
      const auto list = cut.region_list(r);
      const Box rb = cut.region_box(r);
      for (std::uint32_t i = 0; i < planes.size(); ++i) {
        // The region lies in its bounding box; anything crossing the region touches the box.
        if (!planes.touches(i, rb)) CHECK_FALSE(std::binary_search(list.begin(), list.end(), i));
      }
    }
    for (int q = 0; q < 20; ++q) {
      const auto box = random_query(rng, d - 1, 8);
      const auto truth = scan_crossing(planes, box);
      auto cand = cut.candidates(box);
      std::sort(cand.begin(), cand.end());
      CHECK(std::includes(cand.begin(), cand.end(), truth.begin(), truth.end()));
      CHECK(cut.crossing(box) == truth);
    }
  }
}

TEST_CASE("cutting region load") {
  std::vector<double> ratios;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto planes = skyline_planes(DistributionKind::Independent, 400, 3, 100 + seed);
    const std::size_t n = planes.size();
    const auto t = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
    const auto cut = Cutting::build(planes, Box::cube(2, -8, 0), t, seed);
    CHECK(cut.max_region_load() <= n);
    ratios.push_back(static_cast<double>(cut.max_region_load()) * static_cast<double>(t) / static_cast<double>(n));
  }
  std::sort(ratios.begin(), ratios.end());
  const double median = (ratios[9] + ratios[10]) / 2;
  MESSAGE("median max load as a multiple of N/t: ", median);
  CHECK(median <= 4.0);
}

TEST_CASE("intersection index round trips") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::size_t d = 3 + seed % 3;
    const auto planes = skyline_planes(DistributionKind(seed % 3), 80, d, seed);
    const Box bounds = Box::cube(d - 1, -8, 0);
    const IntersectionIndexHD variants[] = {LineQuadtree::build(planes, bounds, {.max_entries = 1 << 18}),
                                            Cutting::build(planes, bounds, 4, seed)};
    for (const auto& ii : variants) {
      std::stringstream ss;
      ii.write(ss);
      const auto text = ss.str();
      const auto back = IntersectionIndexHD::read(ss);
      CHECK(back.is_quadtree() == ii.is_quadtree());
      if (ii.is_quadtree()) {
        CHECK(*back.quadtree() == *ii.quadtree());
      } else {
        CHECK(*back.cutting() == *ii.cutting());
      }
      CHECK(back.fingerprint() == ii.fingerprint());
      std::stringstream again;
      back.write(again);
      CHECK(again.str() == text);
    }
  }
  std::stringstream bad("ECLIPSE-QT v9\n");
  CHECK_THROWS_AS(IntersectionIndexHD::read(bad), DataError);
}

TEST_CASE("queries beyond the bounds fall back to a scan") {
  const auto planes = skyline_planes(DistributionKind::AntiCorrelated, 200, 3, 4);
  const IntersectionIndexHD ii(LineQuadtree::build(planes, Box::cube(2, -2, 0)));
  const Box q{{-6, -5}, {-0.5, -1}};
  CHECK(ii.crossing(q) == scan_crossing(planes, q));
}

TEST_CASE("default cutting parameter") {
  CHECK(default_cutting_t(100, 2) == 10);
  CHECK(default_cutting_t(101, 2) == 11);
  CHECK(default_cutting_t(10000, 2) == 32);
  CHECK(default_cutting_t(10000, 3) == 10);
  CHECK(default_cutting_t(0, 2) == 1);
}
