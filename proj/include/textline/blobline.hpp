#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <string>
#include <vector>

#include "textline/components.hpp"
#include "textline/distance_transform.hpp"
#include "textline/error.hpp"
#include "textline/geometry.hpp"
#include "textline/morphology.hpp"
#include "textline/raster.hpp"

namespace textline {

// The detected blob lines: one label per 8-connected component of the
// detection mask, plus an exact distance field for each label.
class BlobLineSet {
 public:
  static BlobLineSet build(const BinaryPage& mask) {
    const auto comps = extract_components(mask, Connectivity::eight);
    if (comps.empty()) throw Error(ErrorCode::no_blob_lines, "no blob lines detected");
    BlobLineSet set;
    set.labels_ = component_raster(comps, mask.width(), mask.height());
    set.fields_.reserve(comps.size());
    for (const auto& c : comps) {
      const auto id = static_cast<std::uint32_t>(c.id);
      set.fields_.push_back(squared_distance_transform(
          mask.width(), mask.height(), [&](int x, int y) { return set.labels_(x, y) == id; }));
    }
    return set;
  }

  int count() const noexcept { return static_cast<int>(fields_.size()); }
  int width() const noexcept { return labels_.width(); }
  int height() const noexcept { return labels_.height(); }
  const LabelRaster& labels() const noexcept { return labels_; }

  const SquaredDistanceField& squared_field(int label) const {
    check_label(label);
    return fields_[static_cast<std::size_t>(label - 1)];
  }

  std::uint32_t squared_distance(int label, int x, int y) const { return squared_field(label)(x, y); }

  double distance(int label, int x, int y) const {
    return std::sqrt(static_cast<double>(squared_distance(label, x, y)));
  }

  // Euclidean distance from a real-valued point, rounded to the nearest pixel,
  // to the closest pixel of the given blob line.
  double nearest_distance(int label, Point2 p) const {
    check_label(label);
    const auto x = static_cast<int>(std::lround(p.x));
    const auto y = static_cast<int>(std::lround(p.y));
    if (!labels_.contains(x, y))
      throw Error(ErrorCode::invalid_argument, "query point outside the page");
    return distance(label, x, y);
  }

 private:
  void check_label(int label) const {
    if (label < 1 || label > count())
      throw Error(ErrorCode::invalid_argument,
                  "blob line label " + std::to_string(label) + " out of range 1.." + std::to_string(count()));
  }

  LabelRaster labels_;
  std::vector<SquaredDistanceField> fields_;
};

inline BlobLineSet build_blob_line_set(const BinaryPage& mask) { return BlobLineSet::build(mask); }

inline double nearest_blob_distance(const BlobLineSet& set, int label, Point2 point) {
  return set.nearest_distance(label, point);
}

namespace detail {

// Longest geodesic path through the largest 8-connected piece of a skeleton,
// found by two breadth-first sweeps (exact on trees).
inline std::vector<PixelPos> longest_skeleton_path(const BinaryPage& skeleton) {
  auto comps = extract_components(skeleton, Connectivity::eight);
  if (comps.empty()) return {};
  const Component* best = &comps.front();
  for (const auto& c : comps)
    if (c.area > best->area) best = &c;

  const int w = skeleton.width(), h = skeleton.height();
  const auto bfs = [&](PixelPos start, std::vector<std::int64_t>& parent) {
    parent.assign(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), -2);
    std::deque<PixelPos> queue{start};
    parent[skeleton.index(start.x, start.y)] = -1;
    PixelPos last = start;
    while (!queue.empty()) {
      const auto p = queue.front();
      queue.pop_front();
      last = p;
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          const int nx = p.x + dx, ny = p.y + dy;
          if ((dx == 0 && dy == 0) || !skeleton.contains(nx, ny) || !skeleton.foreground(nx, ny)) continue;
          auto& par = parent[skeleton.index(nx, ny)];
          if (par != -2) continue;
          par = static_cast<std::int64_t>(skeleton.index(p.x, p.y));
          queue.push_back({nx, ny});
        }
      }
    }
    return last;
  };

  std::vector<std::int64_t> parent;
  const PixelPos start{best->runs.front().x_begin, best->runs.front().y};
  const PixelPos end_a = bfs(start, parent);
  const PixelPos end_b = bfs(end_a, parent);
  std::vector<PixelPos> path;
  for (auto i = static_cast<std::int64_t>(skeleton.index(end_b.x, end_b.y)); i >= 0;
       i = parent[static_cast<std::size_t>(i)])
    path.push_back({static_cast<int>(i % w), static_cast<int>(i / w)});
  return path;
}

}  // namespace detail

inline constexpr int kDefaultBrushThickness = 12;

// Ground-truth blob lines from text line polygons: fill each polygon, thin it,
// keep the longest skeleton path, and paint that path with a disk brush of the
// given diameter. The brush is clipped to the polygon so neighboring lines
// never merge. Degenerate polygons are skipped and reported in `warnings`.
inline BinaryPage skeleton_labels_from_polygons(const std::vector<Ring>& polygons, int width, int height,
                                                int thickness = kDefaultBrushThickness,
                                                std::vector<std::string>* warnings = nullptr) {
  BinaryPage out(width, height);
  const int radius = std::max(0, thickness / 2);
  for (std::size_t i = 0; i < polygons.size(); ++i) {
    const auto& poly = polygons[i];
    if (poly.points.size() < 3 || ring_area(poly) <= 0.0) {
      if (warnings) warnings->push_back("skipping degenerate polygon #" + std::to_string(i));
      continue;
    }
    // Work in the polygon's bounding window; integer shifts keep the fill exact.
    double min_x = poly.points[0].x, min_y = poly.points[0].y, max_x = min_x, max_y = min_y;
    for (const auto& p : poly.points) {
      min_x = std::min(min_x, p.x);
      min_y = std::min(min_y, p.y);
      max_x = std::max(max_x, p.x);
      max_y = std::max(max_y, p.y);
    }
    const int x0 = std::clamp(static_cast<int>(std::floor(min_x)) - 1, 0, width - 1);
    const int y0 = std::clamp(static_cast<int>(std::floor(min_y)) - 1, 0, height - 1);
    const int x1 = std::clamp(static_cast<int>(std::ceil(max_x)) + 1, 0, width - 1);
    const int y1 = std::clamp(static_cast<int>(std::ceil(max_y)) + 1, 0, height - 1);
    Ring local = poly;
    for (auto& p : local.points) {
      p.x -= x0;
      p.y -= y0;
    }
    const int lw = x1 - x0 + 1, lh = y1 - y0 + 1;
    const auto interior = rasterize_rings({local}, lw, lh);
    if (interior.count_foreground() == 0) {
      if (warnings) warnings->push_back("skipping degenerate polygon #" + std::to_string(i));
      continue;
    }
    BinaryPage stroke(lw, lh);
    for (const auto& p : detail::longest_skeleton_path(thin(interior))) stroke.set(p.x, p.y, true);
    stroke = dilate_disk(stroke, radius);
    for (int y = 0; y < lh; ++y)
      for (int x = 0; x < lw; ++x)
        if (stroke.foreground(x, y) && interior.foreground(x, y)) out.set(x + x0, y + y0, true);
  }
  return out;
}

}  // namespace textline
