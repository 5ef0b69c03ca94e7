// eclipse: generate data, run eclipse queries, build indexes, benchmark.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eclipse/bench.hpp"
#include "eclipse/datagen.hpp"
#include "eclipse/eclipse.hpp"

namespace {

using namespace eclipse;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kData = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t default_seed() {
  if (const char* env = std::getenv("ECLIPSE_SEED")) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError("ECLIPSE_SEED must be a non-negative integer");
  }
  return 1;
}

double parse_ratio(const std::string& s, const std::string& spec) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size() && std::isfinite(v)) return v;
  } catch (const std::exception&) {
  }
  throw UsageError("malformed range '" + spec + "': bad number '" + s + "'");
}

/// "l:h,l:h,..." with 0 <= l <= h.
RatioBox parse_range(const std::string& spec) {
  std::vector<RatioInterval> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = spec.find(',', start);
    const std::string part = spec.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    const auto colon = part.find(':');
    if (colon == std::string::npos) throw UsageError("malformed range '" + spec + "': expected l:h");
    const double lo = parse_ratio(part.substr(0, colon), spec);
    const double hi = parse_ratio(part.substr(colon + 1), spec);
    if (lo < 0.0 || hi < 0.0) throw UsageError("malformed range '" + spec + "': ratios must be non-negative");
    if (lo > hi) throw UsageError("malformed range '" + spec + "': l > h");
    out.push_back({lo, hi});
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return RatioBox(std::move(out));
}

Algorithm algorithm_flag(const std::string& name, bool index_only) {
  const auto algo = parse_algorithm(name);
  if (!algo || (index_only && (*algo == Algorithm::Base || *algo == Algorithm::Tran))) {
    throw UsageError("unknown algorithm '" + name + "'");
  }
  return *algo;
}

DistributionKind kind_flag(const std::string& name) {
  const auto kind = parse_distribution(name);
  if (!kind) throw UsageError("unknown distribution '" + name + "' (corr, inde, anti)");
  return *kind;
}

void check_box(const RatioBox& box, std::size_t d) {
  if (box.dim() != d) {
    throw UsageError("range has " + std::to_string(box.ratio_dims()) + " intervals, data needs " +
                     std::to_string(d - 1));
  }
}

std::ostream& open_out(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw DataError("cannot write " + path);
  return file;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Eclipse queries over weighted attribute ratio ranges"};
  app.require_subcommand(1);

  std::string kind = "inde", input, output, range, algo = "tran", index_path;
  std::size_t n = 1024, d = 3, trials = 200, threads = 0, reps = 5, t = 0;
  std::optional<std::uint64_t> seed;

  auto* gen = app.add_subcommand("gen", "Generate a synthetic dataset as CSV");
  gen->add_option("--kind", kind, "corr, inde or anti")->required();
  gen->add_option("--n", n, "number of points")->check(CLI::PositiveNumber);
  gen->add_option("--d", d, "dimensions")->check(CLI::Range(2, 64));
  gen->add_option("--seed", seed);
  gen->add_option("--out", output, "output file (default stdout)");

  auto* query = app.add_subcommand("query", "Eclipse points of a CSV dataset, one id per line");
  query->add_option("--algo", algo, "base, tran, quad or cutting");
  query->add_option("--input", input)->required();
  query->add_option("--range", range, "l:h per ratio dimension, comma separated")->required();
  query->add_option("--index", index_path, "prebuilt index from 'build'");
  query->add_option("--seed", seed);

  auto* build = app.add_subcommand("build", "Build and save a dual-space index");
  build->add_option("--algo", algo, "quad or cutting")->required();
  build->add_option("--input", input)->required();
  build->add_option("--out", output)->required();
  build->add_option("--t", t, "cutting parameter (default ceil(sqrt N), capped)");
  build->add_option("--seed", seed);

  auto* bench = app.add_subcommand("bench", "Benchmark all algorithms, CSV report");
  bench->add_option("--reps", reps, "repetitions per row")->check(CLI::PositiveNumber);
  bench->add_option("--seed", seed);
  bench->add_option("--out", output, "report file (default stdout)");

  auto* expect = app.add_subcommand("expect", "Mean eclipse result size over generated datasets");
  expect->add_option("--kind", kind, "corr, inde or anti");
  expect->add_option("--n", n)->check(CLI::PositiveNumber);
  expect->add_option("--d", d)->check(CLI::Range(2, 24));
  expect->add_option("--range", range)->required();
  expect->add_option("--trials", trials)->check(CLI::PositiveNumber);
  expect->add_option("--threads", threads, "0: all cores");
  expect->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    const std::uint64_t s = seed ? *seed : default_seed();

    if (*gen) {
      const auto k = kind_flag(kind);
      const Dataset data = generate({k, n, d, s});
      std::ofstream file;
      auto& out = open_out(output, file);
      out << "# kind=" << to_string(k) << " n=" << n << " d=" << d << " seed=" << s << '\n';
      write_points(data, out);
      if (!out) throw DataError("write failed");
    } else if (*query) {
      const auto a = algorithm_flag(algo, false);
      const RatioBox box = parse_range(range);
      const Dataset data = read_points(std::filesystem::path(input));
      check_box(box, data.dim());
      std::vector<PointId> ids;
      if (!index_path.empty()) {
        if (a != Algorithm::Quad && a != Algorithm::Cutting) throw UsageError("--index needs --algo quad or cutting");
        std::ifstream in(index_path);
        if (!in) throw DataError("cannot open " + index_path);
        const auto index = EclipseIndex::read(in);
        if (index.algorithm() != a) throw UsageError("index was built for a different algorithm");
        ids = index.query(box);
      } else {
        IndexBuildOptions opts;
        opts.seed = s;
        if (!box.all_upper_positive() && a != Algorithm::Base) {
          throw UsageError("every upper ratio must be positive for --algo " + algo);
        }
        ids = eclipse_query(data, box, a, opts);
      }
      for (auto id : ids) std::cout << id << '\n';
    } else if (*build) {
      const auto a = algorithm_flag(algo, true);
      const Dataset data = read_points(std::filesystem::path(input));
      IndexBuildOptions opts;
      opts.seed = s;
      opts.cutting_t = t;
      const auto index = EclipseIndex::build(data, a, opts);
      std::ofstream out(output);
      if (!out) throw DataError("cannot write " + output);
      index.write(out);
      if (!out) throw DataError("write failed for " + output);
    } else if (*bench) {
      auto cfg = default_bench_config(s);
      cfg.repetitions = reps;
      const auto report = run_bench(cfg, &std::cerr);
      std::ofstream file;
      auto& out = open_out(output, file);
      report.write_csv(out);
      for (const auto& note : report.notes) std::cerr << "note: " << note << '\n';
      if (!report.agreement) {
        std::cerr << "error: algorithms disagree\n";
        return kData;
      }
    } else if (*expect) {
      const auto k = kind_flag(kind);
      const RatioBox box = parse_range(range);
      check_box(box, d);
      if (!box.all_upper_positive()) throw UsageError("every upper ratio must be positive");
      std::cout << expected_eclipse_count(k, n, d, box, trials, s, threads) << '\n';
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ContractError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kData;
  } catch (const IndexTooLarge& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kData;
  }
  return kOk;
}
