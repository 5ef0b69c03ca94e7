// Acceptance checks; prints one PASS/FAIL line per criterion and exits non-zero on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "eclipse/bench.hpp"
#include "eclipse/datagen.hpp"
#include "eclipse/dominance.hpp"
#include "eclipse/dual_index_2d.hpp"
#include "eclipse/eclipse.hpp"
#include "eclipse/skyline.hpp"
#include "eclipse/transform.hpp"
#include "helpers.hpp"

using namespace eclipse;
using Clock = std::chrono::steady_clock;

namespace {

const double kBoxes[4][2] = {{0.18, 5.67}, {0.36, 2.75}, {0.58, 1.73}, {0.84, 1.19}};

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Outcome goldens() {
  const auto start = Clock::now();
  const auto data = testing::running_example();
  const RatioBox box({{0.25, 2}});
  bool ok = true;
  std::string why;
  auto expect = [&](bool cond, const char* what) {
    if (!cond) ok = false, why += std::string(" ") + what;
  };

  const std::vector<PointId> p123{1, 2, 3};
  expect(eclipse_baseline(data, box) == p123, "baseline");
  expect(eclipse_transform(data, box) == p123, "transform");
  for (auto algo : {Algorithm::Quad, Algorithm::Cutting}) expect(eclipse_query(data, box, algo) == p123, "index");

  const std::vector<std::vector<double>> images{{4, 6.25}, {6, 5}, {6.5, 2.5}, {10.5, 7}};
  for (std::size_t i = 0; i < 4; ++i) expect(map_point_2d(data[i], 0.25, 2).c == images[i], "images");

  const auto idx = OrderVectorIndex2D::build(data);
  expect(idx.boundaries() == std::vector<double>{-1.5, -1.0, -2.0 / 3.0}, "intersections");
  const auto last = idx.order_vector(idx.interval_count() - 1);
  expect(std::vector<std::uint32_t>(last.begin(), last.end()) == std::vector<std::uint32_t>{2, 1, 0},
         "rightmost order vector");
  Query2DStats st;
  const auto got = idx.query(0.25, 2, PairRule::Snapshot, &st);
  // Every counter ends at zero: all u points are returned after 2 + 1 + 0 decrements.
  expect(got == p123 && got.size() == idx.u() && st.decrements == 3, "final order vector");

  const double secs = seconds_since(start);
  expect(secs < 1.0, "time");
  return {ok, "worked-example goldens in " + fmt("%.4f s", secs) + why};
}

Outcome four_way() {
  const auto start = Clock::now();
  std::size_t instances = 0, mismatches = 0, halved = 0;
  const DistributionKind kinds[] = {DistributionKind::Correlated, DistributionKind::Independent,
                                    DistributionKind::AntiCorrelated};
  std::uint64_t seed = 1000;
  for (std::size_t n : {16, 64, 256, 1024}) {
    for (std::size_t d = 2; d <= 5; ++d) {
      for (auto kind : kinds) {
        for (const auto& b : kBoxes) {
          for (int rep = 0; rep < 2; ++rep, ++seed) {
            const RatioBox box = RatioBox::uniform(d, b[0], b[1]);
            std::size_t size = n;
            while (true) {
              const auto data = generate({kind, size, d, seed});
              try {
                IndexBuildOptions opts;
                opts.seed = seed;
                const auto quad = EclipseIndex::build(data, Algorithm::Quad, opts).query(box);
                const auto cut = EclipseIndex::build(data, Algorithm::Cutting, opts).query(box);
                const auto base = eclipse_baseline(data, box);
                const auto tran = eclipse_transform(data, box);
                if (base != tran || base != quad || base != cut) ++mismatches;
                ++instances;
                break;
              } catch (const IndexTooLarge&) {
                size /= 2;
                ++halved;
              }
            }
          }
        }
      }
    }
  }
  const double secs = seconds_since(start);
  const bool ok = instances >= 300 && mismatches == 0 && secs <= 600;
  return {ok, "BASE = TRAN = QUAD = CUTTING on " + std::to_string(instances) + " instances, " +
                  std::to_string(mismatches) + " mismatches, " + std::to_string(halved) +
                  " halvings of n for the skyline guard, " + fmt("%.1f s", secs)};
}

Outcome soundness() {
  Rng rng(20261016);
  std::size_t triples = 0, violations = 0, draws = 0;
  while (triples < 1000) {
    const std::size_t d = 2 + rng.below(4);
    const auto box = testing::random_box(rng, d);
    std::vector<double> p(d), q(d);
    for (std::size_t j = 0; j < d; ++j) {
      p[j] = rng.uniform();
      q[j] = std::max(0.0, p[j] + 0.4 * (rng.uniform() - 0.25));
    }
    ++draws;
    const Point a(0, p), b(1, q);
    if (!eclipse_dominates(a, b, box)) continue;
    ++triples;
    for (int s = 0; s < 1000; ++s) {
      const auto w = RatioBox::weights_for(testing::sample_ratios(rng, box));
      if (!(score(a, w) <= score(b, w))) ++violations;
    }
  }
  return {violations == 0, "corner-check dominance holds at 1000 interior samples for " + std::to_string(triples) +
                               " triples (" + std::to_string(draws) + " drawn), " + std::to_string(violations) +
                               " violations"};
}

bool within(double got, double target) { return std::abs(got - target) <= 0.25 * target; }

Outcome by_dimension() {
  const double target[] = {1.8, 3.8, 8.5, 17.2};
  std::string detail = "INDE n=1024 box [0.36,2.75], 200 trials:";
  bool ok = true;
  double prev = 0;
  for (std::size_t d = 2; d <= 5; ++d) {
    const double m = expected_eclipse_count(DistributionKind::Independent, 1024, d,
                                            RatioBox::uniform(d, 0.36, 2.75), 200, 4000 + d);
    ok = ok && within(m, target[d - 2]) && m > prev;
    prev = m;
    detail += " d=" + std::to_string(d) + " " + fmt("%.2f", m) + " (target " + fmt("%.1f", target[d - 2]) + ")";
  }
  return {ok, detail};
}

Outcome by_box() {
  const double target[] = {7.2, 3.8, 2.2, 1.3};
  std::string detail = "INDE n=1024 d=3, 200 trials:";
  bool ok = true;
  double prev = HUGE_VAL;
  for (int i = 0; i < 4; ++i) {
    const double m = expected_eclipse_count(DistributionKind::Independent, 1024, 3,
                                            RatioBox::uniform(3, kBoxes[i][0], kBoxes[i][1]), 200, 5000 + i);
    ok = ok && within(m, target[i]) && m < prev;
    prev = m;
    detail += " [" + fmt("%.2f", kBoxes[i][0]) + "," + fmt("%.2f", kBoxes[i][1]) + "] " + fmt("%.2f", m) +
              " (target " + fmt("%.1f", target[i]) + ")";
  }
  return {ok, detail};
}

Outcome by_size() {
  std::string detail = "INDE d=3 box [0.36,2.75], 200 trials:";
  bool ok = true;
  for (std::size_t n : {128, 1024, 8192}) {
    const double m = expected_eclipse_count(DistributionKind::Independent, n, 3, RatioBox::uniform(3, 0.36, 2.75),
                                            200, 6000 + n);
    ok = ok && m >= 3.0 && m <= 5.0;
    detail += " n=" + std::to_string(n) + " " + fmt("%.2f", m);
  }
  return {ok, detail + " (all within [3, 5])"};
}

Outcome timing() {
  BenchConfig cfg;
  cfg.seed = 77;
  cfg.repetitions = 5;
  cfg.workloads = {{"anti", DistributionKind::AntiCorrelated, 8192, 3, 0.36, 2.75},
                   {"inde", DistributionKind::Independent, 8192, 3, 0.36, 2.75},
                   {"adversarial", std::nullopt, 64, 3, 0.36, 2.75}};
  const auto report = run_bench(cfg);
  auto q = [&](Algorithm a, const char* w) -> double {
    const auto* row = report.find(a, w);
    return row ? static_cast<double>(row->query_time_ns) : HUGE_VAL;
  };
  const double base_anti = q(Algorithm::Base, "anti"), tran_anti = q(Algorithm::Tran, "anti");
  const double tran_inde = q(Algorithm::Tran, "inde");
  const double quad_inde = q(Algorithm::Quad, "inde"), cut_inde = q(Algorithm::Cutting, "inde");
  const double quad_adv = q(Algorithm::Quad, "adversarial"), cut_adv = q(Algorithm::Cutting, "adversarial");
  const bool a = base_anti >= 5 * tran_anti;
  const bool b = quad_inde < tran_inde && cut_inde < tran_inde;
  const bool c = cut_adv <= quad_adv;
  std::string detail = "medians of 5: (a) ANTI n=8192 BASE/TRAN " + fmt("%.1fx", base_anti / tran_anti) +
                       (a ? "" : " FAIL") + "; (b) INDE n=8192 TRAN " + fmt("%.0f us", tran_inde / 1e3) +
                       " vs QUAD " + fmt("%.1f us", quad_inde / 1e3) + ", CUTTING " +
                       fmt("%.1f us", cut_inde / 1e3) + (b ? "" : " FAIL") + "; (c) adversarial QUAD " +
                       fmt("%.2f ms", quad_adv / 1e6) + " vs CUTTING " + fmt("%.2f ms", cut_adv / 1e6) +
                       (c ? "" : " FAIL");
  if (!report.agreement) detail += "; algorithms disagree";
  for (const auto& note : report.notes) detail += "; " + note;
  return {a && b && c && report.agreement, detail};
}

Outcome properties() {
  std::vector<std::string> failed;
  std::size_t checks = 0;
  auto check = [&](bool cond, const std::string& name) {
    ++checks;
    if (!cond && std::find(failed.begin(), failed.end(), name) == failed.end()) failed.push_back(name);
  };
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed + 7000);
    const std::size_t d = 2 + seed % 4;
    const auto data = generate({DistributionKind(seed % 3), 60, d, seed});
    auto box = testing::random_box(rng, d);
    std::vector<RatioInterval> pos = box.intervals();
    for (auto& iv : pos) iv.lo = std::max(iv.lo, 0.01), iv.hi = std::max(iv.hi, iv.lo);
    const RatioBox pbox(pos);

    for (std::size_t a = 0; a < data.size(); ++a) {
      for (std::size_t b = 0; b < data.size(); ++b) {
        if (a == b) continue;
        const bool ab = eclipse_dominates(data[a], data[b], box);
        if (ab) check(!eclipse_dominates(data[b], data[a], box), "asymmetry");
        if (skyline_dominates(data[a], data[b])) check(eclipse_dominates(data[a], data[b], pbox), "skyline=>eclipse");
        if (!ab) continue;
        for (std::size_t c = 0; c < data.size(); ++c) {
          if (c != a && c != b && eclipse_dominates(data[b], data[c], box)) {
            check(eclipse_dominates(data[a], data[c], box), "transitivity");
          }
        }
      }
    }

    const auto ecl = eclipse_baseline(data, box);
    const auto sky = testing::skyline_oracle(data);
    check(testing::is_subset(ecl, sky), "eclipse in skyline");
    check(skyline(data).ids == sky, "skyline oracle");
    for (int s = 0; s < 20; ++s) {
      const auto nn = nn_point(data, RatioBox::weights_for(testing::sample_ratios(rng, box)));
      check(testing::is_subset(nn, ecl), "sampled 1NN in eclipse");
    }
    const double r = 0.05 + 3.9 * rng.uniform();
    const auto nn = nn_point(data, RatioBox::weights_for(std::vector<double>(d - 1, r)));
    const RatioBox point_box = RatioBox::uniform(d, r, r);
    check(eclipse_baseline(data, point_box) == nn && eclipse_transform(data, point_box) == nn,
          "degenerate box is 1NN");

    const auto index = EclipseIndex::build(data, seed % 2 ? Algorithm::Quad : Algorithm::Cutting, {.seed = seed});
    std::stringstream ss;
    index.write(ss);
    const auto text = ss.str();
    const auto back = EclipseIndex::read(ss);
    std::stringstream again;
    back.write(again);
    const RatioBox qbox = box.all_upper_positive() ? box : pbox;
    check(again.str() == text && back.query(qbox) == index.query(qbox) &&
              index.query(qbox) == eclipse_baseline(data, qbox),
          "index round trip");
  }
  std::string detail = std::to_string(checks) + " checks over 100 seeds";
  for (const auto& f : failed) detail += "; failed: " + f;
  return {failed.empty(), detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"worked example", goldens},          {"four-way equivalence", four_way},
      {"dominance soundness", soundness},   {"expected count by dimension", by_dimension},
      {"expected count by box", by_box},    {"expected count by n", by_size},
      {"timing order", timing},             {"property suites", properties}};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("criterion %zu %s: %s: %s [%.1f s]\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first,
                o.detail.c_str(), seconds_since(start));
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
