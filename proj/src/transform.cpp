#include "eclipse/transform.hpp"

#include <algorithm>

#include "eclipse/skyline.hpp"

namespace eclipse {

namespace {

void require_positive_upper(const RatioBox& box) {
  if (!box.all_upper_positive()) {
    throw ContractError("transform needs every upper ratio bound h_j > 0");
  }
}

std::vector<PointId> ids_at(const Dataset& data, const std::vector<std::size_t>& positions) {
  std::vector<PointId> ids;
  ids.reserve(positions.size());
  for (std::size_t pos : positions) ids.push_back(data.id(pos));
  std::sort(ids.begin(), ids.end());
  return ids;
}

}  // namespace

MappedPoint map_point_2d(const PointView& p, double l, double h) {
  if (p.dim() != 2) throw ContractError("map_point_2d requires d = 2");
  if (!(h > 0.0)) throw ContractError("map_point_2d requires h > 0");
  if (l < 0.0 || l > h) throw ContractError("map_point_2d requires 0 <= l <= h");
  return {{p[0] + p[1] / h, l * p[0] + p[1]}, p.id};
}

MappedPoint map_point_highd(const PointView& p, const RatioBox& box) {
  if (p.dim() != box.dim()) throw ContractError("ratio box dimension does not match point");
  require_positive_upper(box);
  const std::size_t k = box.ratio_dims();
  double lower_sum = 0.0;
  for (std::size_t j = 0; j < k; ++j) lower_sum += box[j].lo * p[j];

  MappedPoint m{std::vector<double>(k + 1), p.id};
  m.c[k] = lower_sum + p[k];
  for (std::size_t j = 0; j < k; ++j) {
    const double others = lower_sum - box[j].lo * p[j];
    m.c[j] = (p[k] + box[j].hi * p[j] + others) / box[j].hi;
  }
  return m;
}

MappedPoint corner_image(const PointView& p, const RatioBox& box) {
  if (p.dim() != box.dim()) throw ContractError("ratio box dimension does not match point");
  const auto corners = corner_weights(box);
  MappedPoint m{{}, p.id};
  m.c.reserve(corners.size());
  for (const auto& w : corners) m.c.push_back(score(p, w));
  return m;
}

std::vector<PointId> eclipse_transform(const Dataset& data, const RatioBox& box) {
  if (box.dim() != data.dim()) throw ContractError("ratio box dimension does not match data");
  require_positive_upper(box);

  if (data.dim() == 2) {
    std::vector<double> images;
    images.reserve(2 * data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
      auto m = map_point_2d(data[i], box[0].lo, box[0].hi);
      images.insert(images.end(), m.c.begin(), m.c.end());
    }
    return ids_at(data, skyline_rows_2d(images, data.size()));
  }

  // With every h_j > 0, each coordinate carries positive weight at some corner, so a
  // skyline-dominated point is eclipse-dominated and only skyline points survive.
  const auto sky = skyline_highd(data);
  const std::size_t width = std::size_t{1} << box.ratio_dims();
  std::vector<double> images;
  images.reserve(sky.u() * width);
  for (std::size_t pos : sky.positions) {
    auto m = corner_image(data[pos], box);
    images.insert(images.end(), m.c.begin(), m.c.end());
  }
  const auto keep = skyline_rows(images, sky.u(), width);
  std::vector<std::size_t> positions;
  positions.reserve(keep.size());
  for (std::size_t k : keep) positions.push_back(sky.positions[k]);
  return ids_at(data, positions);
}

std::vector<PointId> eclipse_transform_intercepts(const Dataset& data, const RatioBox& box) {
  if (box.dim() != data.dim()) throw ContractError("ratio box dimension does not match data");
  require_positive_upper(box);
  std::vector<double> images;
  images.reserve(data.size() * data.dim());
  for (std::size_t i = 0; i < data.size(); ++i) {
    auto m = map_point_highd(data[i], box);
    images.insert(images.end(), m.c.begin(), m.c.end());
  }
  return ids_at(data, data.dim() == 2 ? skyline_rows_2d(images, data.size())
                                      : skyline_rows(images, data.size(), data.dim()));
}

}  // namespace eclipse
