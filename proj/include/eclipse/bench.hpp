#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "eclipse/datagen.hpp"
#include "eclipse/eclipse.hpp"

namespace eclipse {

struct BenchWorkload {
  std::string name;
  /// nullopt selects generate_adversarial.
  std::optional<DistributionKind> kind;
  std::size_t n = 1024;
  std::size_t d = 3;
  /// The same ratio interval in every dimension.
  double lo = 0.36;
  double hi = 2.75;
};

struct BenchConfig {
  std::vector<Algorithm> algorithms{Algorithm::Base, Algorithm::Tran, Algorithm::Quad, Algorithm::Cutting};
  std::vector<BenchWorkload> workloads;
  std::size_t repetitions = 5;
  std::uint64_t seed = 1;
  IndexBuildOptions index;
  /// Fast calls are repeated until one timing sample covers at least this long.
  std::chrono::nanoseconds min_sample{std::chrono::microseconds(200)};
};

/// Sweeps over n, d and box width across the three distributions plus the adversarial workload.
BenchConfig default_bench_config(std::uint64_t seed);

struct BenchRow {
  Algorithm algorithm;
  std::string workload;
  std::string kind;
  std::size_t n = 0;
  std::size_t d = 0;
  std::string box;
  std::int64_t build_time_ns = 0;
  std::int64_t query_time_ns = 0;
  std::size_t result_count = 0;
  std::size_t m_intersections = 0;
};

struct BenchReport {
  static constexpr const char* header =
      "algorithm,workload,kind,n,d,box,build_time_ns,query_time_ns,result_count,m_intersections";

  std::vector<BenchRow> rows;
  /// Skipped rows (index guard) and disagreements.
  std::vector<std::string> notes;
  /// Every algorithm returned the same ids on every workload.
  bool agreement = true;

  void write_csv(std::ostream& out) const;
  const BenchRow* find(Algorithm algo, const std::string& workload) const;
};

/// Medians over config.repetitions. Build and query are timed separately; BASE and TRAN
/// have no build phase. Rows run one after another on the calling thread.
BenchReport run_bench(const BenchConfig& config, std::ostream* progress = nullptr);

}  // namespace eclipse
