#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "textline/components.hpp"
#include "textline/raster.hpp"

namespace textline {

// Closed polygon; the last vertex connects back to the first. Coordinates are
// in pixel-corner space: pixel (x, y) covers [x, x+1) x [y, y+1).
struct Ring {
  std::vector<Point2> points;

  friend bool operator==(const Ring&, const Ring&) = default;
};

// Twice the signed area (shoelace).
inline double signed_area2(const Ring& ring) {
  double a = 0.0;
  const auto n = ring.points.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = ring.points[i];
    const auto& q = ring.points[(i + 1) % n];
    a += p.x * q.y - q.x * p.y;
  }
  return a;
}

inline double ring_area(const Ring& ring) { return std::abs(signed_area2(ring)) / 2.0; }

// Even-odd crossing test.
inline bool point_in_ring(const Ring& ring, Point2 p) {
  bool inside = false;
  const auto n = ring.points.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const auto& a = ring.points[i];
    const auto& b = ring.points[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_cross = (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x;
      if (p.x < x_cross) inside = !inside;
    }
  }
  return inside;
}

// Scanline fill: a pixel belongs to the ring when its center lies inside
// (even-odd rule). Pixels outside the raster are clipped.
template <typename Paint>
void scan_ring(const Ring& ring, int width, int height, Paint&& paint) {
  if (ring.points.size() < 3) return;
  double min_y = ring.points[0].y, max_y = ring.points[0].y;
  for (const auto& p : ring.points) {
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  const int y0 = std::max(0, static_cast<int>(std::floor(min_y - 0.5)));
  const int y1 = std::min(height - 1, static_cast<int>(std::ceil(max_y - 0.5)));
  std::vector<double> xs;
  const auto n = ring.points.size();
  for (int y = y0; y <= y1; ++y) {
    const double cy = y + 0.5;
    xs.clear();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
      const auto& a = ring.points[i];
      const auto& b = ring.points[j];
      if ((a.y > cy) != (b.y > cy)) xs.push_back((b.x - a.x) * (cy - a.y) / (b.y - a.y) + a.x);
    }
    std::sort(xs.begin(), xs.end());
    for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
      // Pixel centers x + 0.5 strictly inside (xs[k], xs[k+1]).
      const int xa = std::max(0, static_cast<int>(std::floor(xs[k] - 0.5)) + 1);
      const int xb = std::min(width - 1, static_cast<int>(std::ceil(xs[k + 1] - 0.5)) - 1);
      for (int x = xa; x <= xb; ++x) paint(x, y);
    }
  }
}

inline BinaryPage rasterize_rings(const std::vector<Ring>& rings, int width, int height) {
  BinaryPage out(width, height);
  for (const auto& r : rings) scan_ring(r, width, height, [&](int x, int y) { out.set(x, y, true); });
  return out;
}

}  // namespace textline
