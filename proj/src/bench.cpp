#include "eclipse/bench.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "eclipse/dominance.hpp"
#include "eclipse/random.hpp"
#include "eclipse/transform.hpp"

namespace eclipse {

namespace {

using Clock = std::chrono::steady_clock;

template <class F>
std::int64_t time_call(F&& f, std::chrono::nanoseconds min_sample) {
  std::size_t calls = 0;
  const auto start = Clock::now();
  Clock::duration elapsed{};
  do {
    f();
    ++calls;
    elapsed = Clock::now() - start;
  } while (elapsed < min_sample);
  return std::chrono::duration_cast<std::chrono::nanoseconds>(elapsed).count() / static_cast<std::int64_t>(calls);
}

std::int64_t median(std::vector<std::int64_t> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t k = xs.size() / 2;
  return xs.size() % 2 ? xs[k] : (xs[k - 1] + xs[k]) / 2;
}

std::string box_label(double lo, double hi) {
  std::ostringstream ss;
  ss << lo << ':' << hi;
  return ss.str();
}

}  // namespace

BenchConfig default_bench_config(std::uint64_t seed) {
  BenchConfig cfg;
  cfg.seed = seed;
  const DistributionKind kinds[] = {DistributionKind::Correlated, DistributionKind::Independent,
                                    DistributionKind::AntiCorrelated};
  for (auto kind : kinds) {
    for (std::size_t n : {128, 512, 2048, 8192}) {
      cfg.workloads.push_back({"vary-n", kind, n, 3, 0.36, 2.75});
    }
  }
  for (std::size_t d : {2, 3, 4, 5}) {
    cfg.workloads.push_back({"vary-d", DistributionKind::Independent, 1024, d, 0.36, 2.75});
  }
  const double boxes[][2] = {{0.18, 5.67}, {0.36, 2.75}, {0.58, 1.73}, {0.84, 1.19}};
  for (const auto& b : boxes) {
    cfg.workloads.push_back({"vary-box", DistributionKind::Independent, 1024, 3, b[0], b[1]});
  }
  cfg.workloads.push_back({"adversarial", std::nullopt, 64, 3, 0.36, 2.75});
  return cfg;
}

void BenchReport::write_csv(std::ostream& out) const {
  out << header << '\n';
  for (const auto& r : rows) {
    out << to_string(r.algorithm) << ',' << r.workload << ',' << r.kind << ',' << r.n << ',' << r.d << ','
        << r.box << ',' << r.build_time_ns << ',' << r.query_time_ns << ',' << r.result_count << ','
        << r.m_intersections << '\n';
  }
}

const BenchRow* BenchReport::find(Algorithm algo, const std::string& workload) const {
  for (const auto& r : rows) {
    if (r.algorithm == algo && r.workload == workload) return &r;
  }
  return nullptr;
}

BenchReport run_bench(const BenchConfig& config, std::ostream* progress) {
  if (config.repetitions < 1) throw ContractError("bench needs at least one repetition");
  BenchReport report;
  for (std::size_t w = 0; w < config.workloads.size(); ++w) {
    const auto& wl = config.workloads[w];
    const std::uint64_t seed = mix_seed(config.seed, w);
    const Dataset data = wl.kind ? generate({*wl.kind, wl.n, wl.d, seed}) : generate_adversarial(wl.n, wl.d, seed);
    const RatioBox box = RatioBox::uniform(wl.d, wl.lo, wl.hi);
    const std::string kind = wl.kind ? std::string(to_string(*wl.kind)) : "adversarial";
    const std::string label = box_label(wl.lo, wl.hi);

    std::optional<std::vector<PointId>> reference;
    for (auto algo : config.algorithms) {
      BenchRow row{algo, wl.name, kind, wl.n, wl.d, label};
      std::vector<std::int64_t> builds, queries;
      std::vector<PointId> ids;
      try {
        for (std::size_t rep = 0; rep < config.repetitions; ++rep) {
          if (algo == Algorithm::Base || algo == Algorithm::Tran) {
            builds.push_back(0);
            queries.push_back(time_call(
                [&] { ids = algo == Algorithm::Base ? eclipse_baseline(data, box) : eclipse_transform(data, box); },
                config.min_sample));
          } else {
            std::optional<EclipseIndex> index;
            builds.push_back(time_call([&] { index = EclipseIndex::build(data, algo, config.index); },
                                       std::chrono::nanoseconds(0)));
            queries.push_back(time_call([&] { ids = index->query(box, &row.m_intersections); }, config.min_sample));
          }
        }
      } catch (const IndexTooLarge& e) {
        report.notes.push_back(std::string(to_string(algo)) + " skipped on " + wl.name + " " + kind +
                               " n=" + std::to_string(wl.n) + " d=" + std::to_string(wl.d) + ": " + e.what());
        continue;
      }
      row.build_time_ns = median(builds);
      row.query_time_ns = median(queries);
      row.result_count = ids.size();
      if (!reference) {
        reference = ids;
      } else if (*reference != ids) {
        report.agreement = false;
        report.notes.push_back(std::string(to_string(algo)) + " disagrees on " + wl.name + " " + kind +
                               " n=" + std::to_string(wl.n) + " d=" + std::to_string(wl.d));
      }
      if (progress) {
        *progress << to_string(algo) << ' ' << wl.name << ' ' << kind << " n=" << wl.n << " d=" << wl.d
                  << " box=" << label << " query_ns=" << row.query_time_ns << '\n';
      }
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

}  // namespace eclipse
