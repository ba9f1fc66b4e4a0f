#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <vector>

#include "textline/components.hpp"
#include "textline/geometry.hpp"
#include "textline/morphology.hpp"
#include "textline/raster.hpp"

namespace textline {

inline constexpr int kDefaultClosingRadius = 5;

namespace detail {

enum Heading { east = 0, south = 1, west = 2, north = 3 };

inline constexpr std::array<PixelPos, 4> kStep = {{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}};

// Pixels to the right and left of the crack edge leaving vertex (vx, vy) in
// direction h (y grows downward, so "right" of east is south).
inline PixelPos right_pixel(int h, int vx, int vy) {
  switch (h) {
    case east: return {vx, vy};
    case south: return {vx - 1, vy};
    case west: return {vx - 1, vy - 1};
    default: return {vx, vy - 1};
  }
}
inline PixelPos left_pixel(int h, int vx, int vy) {
  switch (h) {
    case east: return {vx, vy - 1};
    case south: return {vx, vy};
    case west: return {vx - 1, vy};
    default: return {vx - 1, vy - 1};
  }
}

// Outer crack boundary of the 4-connected region containing `start`, which
// must be the region's top-most, then left-most pixel. Vertices are pixel
// corners; the walk keeps the region on its right (clockwise on screen).
template <typename InRegion>
Ring trace_outer_boundary(PixelPos start, InRegion&& in_region) {
  Ring ring;
  int vx = start.x, vy = start.y;
  int h = east;
  const int start_x = vx, start_y = vy;
  ring.points.push_back({static_cast<double>(vx), static_cast<double>(vy)});
  while (true) {
    vx += kStep[static_cast<std::size_t>(h)].x;
    vy += kStep[static_cast<std::size_t>(h)].y;
    const auto ar = right_pixel(h, vx, vy);
    const auto al = left_pixel(h, vx, vy);
    int next = h;
    if (!in_region(ar.x, ar.y))
      next = (h + 1) % 4;  // right turn
    else if (in_region(al.x, al.y))
      next = (h + 3) % 4;  // left turn
    if (vx == start_x && vy == start_y && next == east) break;
    if (next != h) ring.points.push_back({static_cast<double>(vx), static_cast<double>(vy)});
    h = next;
  }
  return ring;
}

}  // namespace detail

// Outer boundary rings of every 4-connected region of `mask`, in raster order
// of the regions' first pixels. Pixel centers of each region lie strictly
// inside its ring.
inline std::vector<Ring> trace_regions(const BinaryPage& mask) {
  const auto regions = extract_components(mask, Connectivity::four);
  const auto ids = component_raster(regions, mask.width(), mask.height());
  std::vector<Ring> rings;
  rings.reserve(regions.size());
  for (const auto& r : regions) {
    const auto id = static_cast<std::uint32_t>(r.id);
    rings.push_back(detail::trace_outer_boundary({r.runs.front().x_begin, r.runs.front().y}, [&](int x, int y) {
      return ids.contains(x, y) && ids(x, y) == id;
    }));
  }
  return rings;
}

// For each line id 1..max_label: close the id's pixels with a disk, then trace
// the outer ring of every remaining region. Ids without pixels get no rings.
inline std::vector<std::vector<Ring>> polygons_from_labels(const LabelRaster& r,
                                                           int closing_radius = kDefaultClosingRadius) {
  const auto max_id = r.max_label();
  std::vector<std::vector<Ring>> out(max_id);
  std::vector<BoundingBox> boxes(max_id, BoundingBox{r.width(), r.height(), -1, -1});
  for (int y = 0; y < r.height(); ++y) {
    for (int x = 0; x < r.width(); ++x) {
      const auto v = r(x, y);
      if (!v) continue;
      auto& b = boxes[v - 1];
      b.min_x = std::min(b.min_x, x);
      b.min_y = std::min(b.min_y, y);
      b.max_x = std::max(b.max_x, x);
      b.max_y = std::max(b.max_y, y);
    }
  }
  const int pad = std::max(0, closing_radius) + 1;
  for (std::uint32_t id = 1; id <= max_id; ++id) {
    const auto& b = boxes[id - 1];
    if (b.max_x < 0) continue;
    const int x0 = std::max(0, b.min_x - pad), y0 = std::max(0, b.min_y - pad);
    const int x1 = std::min(r.width() - 1, b.max_x + pad), y1 = std::min(r.height() - 1, b.max_y + pad);
    BinaryPage mask(x1 - x0 + 1, y1 - y0 + 1);
    for (int y = y0; y <= y1; ++y)
      for (int x = x0; x <= x1; ++x) mask.set(x - x0, y - y0, r(x, y) == id);
    auto rings = trace_regions(close_disk(mask, closing_radius));
    for (auto& ring : rings) {
      for (auto& p : ring.points) {
        p.x += x0;
        p.y += y0;
      }
    }
    out[id - 1] = std::move(rings);
  }
  return out;
}

// Paints every ring of line id i + 1 into a label raster (later ids win on overlap).
inline LabelRaster rasterize_line_polygons(const std::vector<std::vector<Ring>>& polygons, int width, int height) {
  LabelRaster out(width, height);
  for (std::size_t i = 0; i < polygons.size(); ++i)
    for (const auto& ring : polygons[i])
      scan_ring(ring, width, height, [&](int x, int y) { out(x, y) = static_cast<std::uint32_t>(i + 1); });
  return out;
}

}  // namespace textline
