#include <doctest.h>

#include "eclipse/skyline.hpp"
#include "helpers.hpp"

using namespace eclipse;

TEST_CASE("skyline examples") {
  const auto data = testing::running_example();
  CHECK(skyline_2d(data).ids == std::vector<PointId>{1, 2, 3});
  CHECK(skyline_2d(data).positions == std::vector<std::size_t>{0, 1, 2});
  CHECK(skyline_highd(data).ids == std::vector<PointId>{1, 2, 3});

  const auto d3 = Dataset(3, {1, 2, 3, 4, 5}, {1, 2, 3, 2, 1, 3, 3, 3, 1, 2, 2, 2, 3, 3, 3});
  CHECK(skyline_highd(d3).ids == std::vector<PointId>{1, 2, 3, 4});
  CHECK(skyline(d3).ids == std::vector<PointId>{1, 2, 3, 4});

  const auto dup = Dataset(2, {5, 6, 7}, {1, 1, 1, 1, 2, 2});
  CHECK(skyline_2d(dup).ids == std::vector<PointId>{5, 6});
  CHECK(skyline_highd(dup).ids == std::vector<PointId>{5, 6});
  CHECK_THROWS_AS(skyline_2d(d3), ContractError);
}

TEST_CASE("skyline of rows") {
  const std::vector<double> rows{3, 1, 1, 3, 2, 2, 3, 3, -1, 5};
  CHECK(skyline_rows_2d(rows, 5) == std::vector<std::size_t>{0, 1, 2, 4});
  CHECK(skyline_rows(rows, 5, 2) == std::vector<std::size_t>{0, 1, 2, 4});
  CHECK(skyline_rows(rows, 2, 5) == std::vector<std::size_t>{0, 1});
}

TEST_CASE("skyline matches the pairwise oracle") {
  Rng rng(3);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const std::size_t d = 2 + seed % 5;
    const std::size_t n = 1 + rng.below(300);
    auto data = generate({DistributionKind(seed % 3), n, d, seed});
    if (seed % 7 == 0) {
      // Coarse grid values force ties and duplicates.
      auto rows = std::vector<std::vector<double>>(n, std::vector<double>(d));
      for (auto& r : rows) {
        for (auto& x : r) x = static_cast<double>(rng.below(4));
      }
      data = Dataset::from_rows(rows);
    }
    const auto oracle = testing::skyline_oracle(data);
    CHECK(skyline(data).ids == oracle);
    CHECK(skyline_highd(data, {.base_case = 2}).ids == oracle);
    CHECK(skyline_highd(data, {.base_case = 1000}).ids == oracle);
  }
}

TEST_CASE("skyline is idempotent and shrinks under deletion") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::size_t d = 2 + seed % 4;
    const auto data = generate({DistributionKind(seed % 3), 200, d, seed});
    const auto sky = skyline(data);
    const auto again = skyline(data.subset(sky.positions));
    CHECK(again.ids == sky.ids);

    // Removing a non-skyline point leaves the skyline unchanged.
    std::vector<std::size_t> keep;
    bool dropped = false;
    for (std::size_t i = 0; i < data.size(); ++i) {
      const bool member = std::binary_search(sky.positions.begin(), sky.positions.end(), i);
      if (!member && !dropped) {
        dropped = true;
        continue;
      }
      keep.push_back(i);
    }
    CHECK(skyline(data.subset(keep)).ids == sky.ids);
  }
}

TEST_CASE("identical points") {
  const auto data = Dataset::from_rows(std::vector<std::vector<double>>(10, {0.5, 0.5, 0.5}));
  CHECK(skyline(data).u() == 10);
  const auto single = Dataset(4, {9}, {1, 2, 3, 4});
  CHECK(skyline(single).ids == std::vector<PointId>{9});
}
