#include "eclipse/datagen.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "eclipse/random.hpp"
#include "eclipse/transform.hpp"
#include "text_io.hpp"

namespace eclipse {

namespace {

constexpr double kSigma = 0.05;

double normal_in_unit(Rng& rng, double mean) {
  double x;
  do {
    x = rng.normal(mean, kSigma);
  } while (x < 0.0 || x > 1.0);
  return x;
}

void simplex_split(Rng& rng, std::size_t d, std::vector<double>& out) {
  std::vector<double> cuts(d - 1);
  for (auto& c : cuts) c = rng.uniform();
  std::sort(cuts.begin(), cuts.end());
  out.resize(d);
  double prev = 0.0;
  for (std::size_t j = 0; j + 1 < d; ++j) {
    out[j] = cuts[j] - prev;
    prev = cuts[j];
  }
  out[d - 1] = 1.0 - prev;
}

std::string trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return std::string(s);
}

std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string_view to_string(DistributionKind kind) noexcept {
  switch (kind) {
    case DistributionKind::Correlated: return "corr";
    case DistributionKind::Independent: return "inde";
    case DistributionKind::AntiCorrelated: return "anti";
  }
  return "?";
}

std::optional<DistributionKind> parse_distribution(std::string_view name) noexcept {
  if (name == "corr" || name == "CORR") return DistributionKind::Correlated;
  if (name == "inde" || name == "INDE") return DistributionKind::Independent;
  if (name == "anti" || name == "ANTI") return DistributionKind::AntiCorrelated;
  return std::nullopt;
}

Dataset generate(const GenSpec& spec) {
  if (spec.n < 1) throw ContractError("generate needs n >= 1");
  if (spec.d < 2) throw ContractError("generate needs d >= 2");
  Rng rng(spec.seed);
  std::vector<PointId> ids(spec.n);
  std::vector<double> coords;
  coords.reserve(spec.n * spec.d);
  std::vector<double> share;
  for (std::size_t i = 0; i < spec.n; ++i) {
    ids[i] = i;
    switch (spec.kind) {
      case DistributionKind::Independent:
        for (std::size_t j = 0; j < spec.d; ++j) coords.push_back(rng.uniform());
        break;
      case DistributionKind::Correlated: {
        const double v = rng.uniform();
        for (std::size_t j = 0; j < spec.d; ++j) coords.push_back(normal_in_unit(rng, v));
        break;
      }
      case DistributionKind::AntiCorrelated: {
        const double total = normal_in_unit(rng, 0.5) * static_cast<double>(spec.d);
        bool fits;
        do {
          simplex_split(rng, spec.d, share);
          fits = std::all_of(share.begin(), share.end(), [&](double s) { return s * total <= 1.0; });
        } while (!fits);
        for (double s : share) coords.push_back(s * total);
        break;
      }
    }
  }
  return Dataset(spec.d, std::move(ids), std::move(coords));
}

Dataset generate_adversarial(std::size_t n, std::size_t d, std::uint64_t seed, double noise) {
  if (n < 1 || d < 2) throw ContractError("generate_adversarial needs n >= 1 and d >= 2");
  Rng rng(seed);
  std::vector<PointId> ids(n);
  std::vector<double> coords;
  coords.reserve(n * d);
  std::vector<double> share;
  for (std::size_t i = 0; i < n; ++i) {
    ids[i] = i;
    simplex_split(rng, d, share);
    for (double s : share) {
      double x;
      do {
        x = s + rng.normal(0.0, noise);
      } while (x < 0.0);
      coords.push_back(x);
    }
  }
  return Dataset(d, std::move(ids), std::move(coords));
}

Dataset read_points(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::size_t d = 0;
  std::vector<PointId> ids;
  std::vector<double> coords;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto fields = text::split(t, ',');
    if (d == 0) {
      if (fields.size() < 3 || trim(fields[0]) != "id") {
        throw ParseError(line_no, "expected header 'id,x1,...,xd' with d >= 2");
      }
      d = fields.size() - 1;
      continue;
    }
    if (fields.size() != d + 1) {
      throw ParseError(line_no, "expected " + std::to_string(d + 1) + " fields, found " +
                                    std::to_string(fields.size()));
    }
    std::uint64_t id = 0;
    if (!text::parse_u64(fields[0], id)) throw ParseError(line_no, "bad id '" + trim(fields[0]) + "'");
    ids.push_back(id);
    for (std::size_t j = 1; j <= d; ++j) {
      double v = 0.0;
      if (!text::parse_double(fields[j], v) || !std::isfinite(v)) {
        throw ParseError(line_no, "bad coordinate '" + trim(fields[j]) + "'");
      }
      if (v < 0.0) throw DomainError("line " + std::to_string(line_no) + ": negative coordinate");
      coords.push_back(v);
    }
  }
  if (d == 0) throw ParseError(line_no, "missing header 'id,x1,...,xd'");
  if (ids.empty()) throw DataError("no points in input");
  return Dataset(d, std::move(ids), std::move(coords));
}

Dataset read_points(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  return read_points(in);
}

void write_points(const Dataset& data, std::ostream& out) {
  out << "id";
  for (std::size_t j = 1; j <= data.dim(); ++j) out << ",x" << j;
  out << '\n';
  for (std::size_t i = 0; i < data.size(); ++i) {
    out << data.id(i);
    for (double v : data.row(i)) out << ',' << shortest(v);
    out << '\n';
  }
}

void write_points(const Dataset& data, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  write_points(data, out);
  if (!out) throw DataError("write failed for " + path.string());
}

double expected_eclipse_count(DistributionKind kind, std::size_t n, std::size_t d, const RatioBox& box,
                              std::size_t trials, std::uint64_t seed, std::size_t threads) {
  if (trials < 1) throw ContractError("expected_eclipse_count needs trials >= 1");
  if (box.dim() != d) throw ContractError("ratio box dimension does not match d");
  if (!box.all_upper_positive()) throw ContractError("every ratio upper bound must be positive");
  std::vector<std::size_t> counts(trials);
  auto run = [&](std::size_t first, std::size_t stride) {
    for (std::size_t k = first; k < trials; k += stride) {
      const Dataset data = generate({kind, n, d, mix_seed(seed, k)});
      counts[k] = eclipse_transform(data, box).size();
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, trials);
  if (threads <= 1) {
    run(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(run, t, threads);
  }
  double sum = 0.0;
  for (auto c : counts) sum += static_cast<double>(c);
  return sum / static_cast<double>(trials);
}

}  // namespace eclipse
