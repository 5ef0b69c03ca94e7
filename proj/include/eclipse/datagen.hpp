#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string_view>

#include "eclipse/core.hpp"

namespace eclipse {

enum class DistributionKind { Correlated, Independent, AntiCorrelated };

/// "corr", "inde", "anti".
std::string_view to_string(DistributionKind kind) noexcept;
/// Accepts the short names above and the upper-case CORR/INDE/ANTI.
std::optional<DistributionKind> parse_distribution(std::string_view name) noexcept;

struct GenSpec {
  DistributionKind kind = DistributionKind::Independent;
  std::size_t n = 1;
  std::size_t d = 2;
  std::uint64_t seed = 0;
};

/// Points in [0,1]^d with ids 0..n-1.
///   INDE: i.i.d. uniform coordinates.
///   CORR: v ~ U[0,1]; each coordinate v + N(0, 0.05), redrawn until it lands in [0,1].
///   ANTI: v ~ N(0.5, 0.05) redrawn into [0,1]; the total v*d is split across the
///         coordinates by uniform simplex weights, redrawing the split if a share exceeds 1.
Dataset generate(const GenSpec& spec);

/// Points whose scores almost agree at ratios (1, ..., 1): uniform on the simplex
/// sum p = 1 plus N(0, noise) per coordinate, kept non-negative. Their dual
/// hyperplanes nearly share the point (-1, ..., -1), so pair hyperplanes crowd there.
Dataset generate_adversarial(std::size_t n, std::size_t d, std::uint64_t seed, double noise = 1e-4);

/// CSV with header `id,x1,...,xd`. Lines starting with '#' are comments.
/// Malformed rows raise ParseError with the 1-based line number; negative coordinates
/// raise DomainError.
Dataset read_points(std::istream& in);
Dataset read_points(const std::filesystem::path& path);

/// Coordinates are written in shortest round-trip form.
void write_points(const Dataset& data, std::ostream& out);
void write_points(const Dataset& data, const std::filesystem::path& path);

/// Mean eclipse result size over `trials` generated datasets; trial k uses seed
/// mix_seed(seed, k). Trials run on up to `threads` threads (0: hardware concurrency).
double expected_eclipse_count(DistributionKind kind, std::size_t n, std::size_t d, const RatioBox& box,
                              std::size_t trials, std::uint64_t seed, std::size_t threads = 0);

}  // namespace eclipse
