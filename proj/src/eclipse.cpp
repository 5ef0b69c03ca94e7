#include "eclipse/eclipse.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <string>

#include "eclipse/dominance.hpp"
#include "eclipse/transform.hpp"

namespace eclipse {

std::string_view to_string(Algorithm algo) noexcept {
  switch (algo) {
    case Algorithm::Base: return "BASE";
    case Algorithm::Tran: return "TRAN";
    case Algorithm::Quad: return "QUAD";
    case Algorithm::Cutting: return "CUTTING";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) noexcept {
  std::string s(name);
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s == "base") return Algorithm::Base;
  if (s == "tran") return Algorithm::Tran;
  if (s == "quad") return Algorithm::Quad;
  if (s == "cutting") return Algorithm::Cutting;
  return std::nullopt;
}

EclipseIndex EclipseIndex::build(const Dataset& data, Algorithm algo, const IndexBuildOptions& options) {
  if (algo != Algorithm::Quad && algo != Algorithm::Cutting) {
    throw ContractError("only QUAD and CUTTING build an index");
  }
  EclipseIndex idx;
  idx.algo_ = algo;
  if (data.dim() == 2) {
    idx.two_d_ = OrderVectorIndex2D::build(data, options.two_d);
    return idx;
  }
  idx.ovi_ = OrderVectorIndexHD::build(data, options.hd);
  if (algo == Algorithm::Quad) {
    idx.ii_ = IntersectionIndexHD(build_quadtree(*idx.ovi_, options.quadtree));
  } else {
    idx.ii_ = IntersectionIndexHD(build_cutting(*idx.ovi_, options.cutting_t, options.seed, options.cutting));
  }
  return idx;
}

std::size_t EclipseIndex::dim() const noexcept { return two_d_ ? 2 : ovi_->dim(); }

std::size_t EclipseIndex::u() const noexcept { return two_d_ ? two_d_->u() : ovi_->u(); }

std::vector<PointId> EclipseIndex::query(const RatioBox& box, std::size_t* m) const {
  if (box.dim() != dim()) throw ContractError("ratio box dimension does not match the index");
  if (two_d_) {
    Query2DStats stats;
    auto out = two_d_->query(box[0].lo, box[0].hi, PairRule::Snapshot, &stats);
    if (m) *m = stats.m;
    return out;
  }
  QueryHDStats stats;
  auto out = query_index_hd(*ovi_, *ii_, box, PairRule::Snapshot, &stats);
  if (m) *m = stats.m;
  return out;
}

void EclipseIndex::write(std::ostream& out) const {
  out << "ECLIPSE-INDEX v1 algo=" << (algo_ == Algorithm::Quad ? "quad" : "cutting") << '\n';
  if (two_d_) {
    two_d_->write(out);
  } else {
    ovi_->write(out);
    ii_->write(out);
  }
}

EclipseIndex EclipseIndex::read(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(1, "empty index file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  EclipseIndex idx;
  if (line == "ECLIPSE-INDEX v1 algo=quad") {
    idx.algo_ = Algorithm::Quad;
  } else if (line == "ECLIPSE-INDEX v1 algo=cutting") {
    idx.algo_ = Algorithm::Cutting;
  } else {
    throw ParseError(1, "expected 'ECLIPSE-INDEX v1 algo=<quad|cutting>'");
  }
  const auto next = in.peek();
  if (next == 'E') {
    std::string rest{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    std::istringstream ss(rest);
    if (rest.starts_with("ECLIPSE-IDX2D")) {
      idx.two_d_ = OrderVectorIndex2D::read(ss);
      return idx;
    }
    if (rest.starts_with("ECLIPSE-IDXHD")) {
      idx.ovi_ = OrderVectorIndexHD::read(ss);
      idx.ii_ = IntersectionIndexHD::read(ss);
      if (idx.ii_->fingerprint() != idx.ovi_->fingerprint()) {
        throw DataError("index file components do not belong together");
      }
      if (idx.ii_->is_quadtree() != (idx.algo_ == Algorithm::Quad)) {
        throw DataError("index file algorithm does not match its intersection index");
      }
      return idx;
    }
  }
  throw ParseError(2, "unknown index component");
}

std::vector<PointId> eclipse_query(const Dataset& data, const RatioBox& box, Algorithm algo,
                                   const IndexBuildOptions& options) {
  switch (algo) {
    case Algorithm::Base: return eclipse_baseline(data, box);
    case Algorithm::Tran: return eclipse_transform(data, box);
    case Algorithm::Quad:
    case Algorithm::Cutting: return EclipseIndex::build(data, algo, options).query(box);
  }
  throw ContractError("unknown algorithm");
}

}  // namespace eclipse
