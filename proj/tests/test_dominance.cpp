#include <doctest.h>

#include "eclipse/dominance.hpp"
#include "eclipse/skyline.hpp"
#include "helpers.hpp"

using namespace eclipse;

TEST_CASE("eclipse dominance on the running example") {
  const auto data = testing::running_example();
  const RatioBox box({{0.25, 2}});
  CHECK(eclipse_dominates(data[1], data[3], box));
  CHECK_FALSE(eclipse_dominates(data[0], data[1], box));
  CHECK_FALSE(eclipse_dominates(data[1], data[0], box));
  // p1 does not skyline-dominate p4 but does eclipse-dominate it.
  CHECK_FALSE(skyline_dominates(data[0], data[3]));
  CHECK(eclipse_dominates(data[0], data[3], box));

  const Point a(10, {1, 1}), b(11, {1, 1});
  CHECK_FALSE(eclipse_dominates(a, b, box));
  CHECK_FALSE(eclipse_dominates(b, a, RatioBox({{0, 9}})));
  CHECK_THROWS_AS(eclipse_dominates(a, a, box), ContractError);
  CHECK_THROWS_AS(eclipse_dominates(a, Point(12, {1, 1, 1}), box), ContractError);
}

TEST_CASE("skyline dominance") {
  const auto data = testing::running_example();
  CHECK(skyline_dominates(data[1], data[3]));
  CHECK_FALSE(skyline_dominates(data[0], data[3]));
  CHECK_FALSE(skyline_dominates(Point(1, {1, 1}), Point(2, {1, 1})));
}

TEST_CASE("nn point") {
  const auto data = testing::running_example();
  CHECK(nn_point(data, WeightVector({2, 1})) == std::vector<PointId>{1});
  CHECK(nn_point(Dataset(2, {7}, {3, 3}), WeightVector({1, 1})) == std::vector<PointId>{7});
  CHECK(nn_point(Dataset(2, {0, 1}, {1, 2, 2, 1}), WeightVector({1, 1})) == std::vector<PointId>{0, 1});
}

TEST_CASE("baseline") {
  const auto data = testing::running_example();
  CHECK(eclipse_baseline(data, RatioBox({{0.25, 2}})) == std::vector<PointId>{1, 2, 3});
  CHECK(eclipse_baseline(data, RatioBox({{2, 2}})) == std::vector<PointId>{1});
  CHECK(eclipse_baseline(Dataset(3, {9}, {1, 2, 3}), RatioBox::uniform(3, 0.5, 1)) == std::vector<PointId>{9});
  // Duplicates of an undominated point are all kept.
  CHECK(eclipse_baseline(Dataset(2, {0, 1, 2}, {1, 1, 1, 1, 2, 2}), RatioBox({{0.5, 2}})) ==
        std::vector<PointId>{0, 1});
}

TEST_CASE("dominance properties over 100 seeds") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    const std::size_t d = 2 + seed % 4;
    const auto data = generate({DistributionKind(seed % 3), 40, d, seed});
    auto box = testing::random_box(rng, d);
    std::vector<RatioInterval> positive = box.intervals();
    for (auto& iv : positive) iv.lo = std::max(iv.lo, 0.01), iv.hi = std::max(iv.hi, iv.lo);
    const RatioBox pbox(positive);

    for (std::size_t a = 0; a < data.size(); ++a) {
      for (std::size_t b = 0; b < data.size(); ++b) {
        if (a == b) continue;
        const bool ab = eclipse_dominates(data[a], data[b], box);
        if (ab) CHECK_FALSE(eclipse_dominates(data[b], data[a], box));
        if (skyline_dominates(data[a], data[b])) CHECK(eclipse_dominates(data[a], data[b], pbox));
        if (!ab) continue;
        for (std::size_t c = 0; c < data.size(); c += 3) {
          if (c == a || c == b) continue;
          if (eclipse_dominates(data[b], data[c], box)) CHECK(eclipse_dominates(data[a], data[c], box));
        }
      }
    }

    const auto ecl = eclipse_baseline(data, box);
    const auto sky = testing::skyline_oracle(data);
    CHECK(testing::is_subset(ecl, sky));
    for (int s = 0; s < 20; ++s) {
      const auto nn = nn_point(data, RatioBox::weights_for(testing::sample_ratios(rng, box)));
      CHECK(testing::is_subset(nn, ecl));
    }

    const double r = 4.0 * rng.uniform();
    const RatioBox point_box = RatioBox::uniform(d, r, r);
    CHECK(eclipse_baseline(data, point_box) ==
          nn_point(data, RatioBox::weights_for(std::vector<double>(d - 1, r))));
  }
}

TEST_CASE("corner check implies dominance inside the box") {
  Rng rng(77);
  std::size_t checked = 0;
  while (checked < 200) {
    const std::size_t d = 2 + rng.below(4);
    const auto box = testing::random_box(rng, d);
    std::vector<double> p(d), q(d);
    for (std::size_t j = 0; j < d; ++j) {
      p[j] = rng.uniform();
      q[j] = p[j] + 0.3 * (rng.uniform() - 0.2);
      q[j] = std::max(q[j], 0.0);
    }
    const Point a(0, p), b(1, q);
    if (!eclipse_dominates(a, b, box)) continue;
    ++checked;
    for (int s = 0; s < 200; ++s) {
      const auto w = RatioBox::weights_for(testing::sample_ratios(rng, box));
      CHECK(score(a, w) <= score(b, w));
    }
  }
}
