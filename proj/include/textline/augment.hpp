#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "textline/error.hpp"
#include "textline/raster.hpp"

namespace textline {

inline BinaryPage flip_horizontal(const BinaryPage& img) {
  BinaryPage out(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) out(img.width() - 1 - x, y) = img(x, y);
  return out;
}

inline BinaryPage flip_vertical(const BinaryPage& img) {
  BinaryPage out(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) out(x, img.height() - 1 - y) = img(x, y);
  return out;
}

// Geometry of the hinge bend for a strip of the given size.
struct HingeWarp {
  double half_width = 0.0;  // arc length at which the bend reaches 90 degrees
  double radius = 0.0;      // radius of the centerline arc
  double center_row = 0.0;  // source row of the centerline
  int out_width = 0;
  int out_height = 0;
  int src_width = 0;
  int src_height = 0;

  static HingeWarp for_strip(int width, int height) {
    HingeWarp w;
    w.src_width = width;
    w.src_height = height;
    w.half_width = width / 2.0;
    w.radius = 2.0 * w.half_width / std::numbers::pi;
    w.center_row = (height - 1) / 2.0;
    w.out_width = static_cast<int>(std::ceil(w.radius + w.center_row)) + 2;
    w.out_height = static_cast<int>(std::ceil(w.center_row + w.radius + (width - w.half_width))) + 2;
    return w;
  }

  // Source (column, row) for an output pixel, or false when nothing maps there.
  // The centerline arc is centered at (0, center_row + radius); a source point
  // at arc length s and offset v from the centerline lands at distance
  // radius - v from that center.
  bool source_of(double ox, double oy, double& sx, double& sy) const {
    const double cy = center_row + radius;
    const double ry = oy - cy;
    double s = 0.0, v = 0.0;
    if (ry <= 0.0) {
      if (ox < 0.0) return false;
      const double theta = std::atan2(ox, -ry);
      s = radius * theta;
      v = radius - std::hypot(ox, ry);
    } else {
      s = half_width + ry;
      v = radius - ox;
    }
    sx = s;
    sy = center_row + v;
    return true;
  }
};

// Bends a strip of straight lines: identity at the left edge, rotating
// gradually to 90 degrees at the horizontal midpoint, and running straight
// down after it. Sampling is nearest-neighbor, so the result stays binary.
// Content farther than the arc radius below the centerline would fold over
// itself and is dropped.
inline BinaryPage hinge_warp(const BinaryPage& strip) {
  const auto w = HingeWarp::for_strip(strip.width(), strip.height());
  BinaryPage out(w.out_width, w.out_height);
  for (int y = 0; y < w.out_height; ++y) {
    for (int x = 0; x < w.out_width; ++x) {
      double sx = 0.0, sy = 0.0;
      if (!w.source_of(x, y, sx, sy)) continue;
      const auto ix = static_cast<int>(std::lround(sx));
      const auto iy = static_cast<int>(std::lround(sy));
      if (sy - w.center_row >= w.radius) continue;
      if (strip.contains(ix, iy) && strip.foreground(ix, iy)) out.set(x, y, true);
    }
  }
  return out;
}

// The warp plus its horizontal, vertical and double mirror: curved lines
// bending in four directions.
inline std::array<BinaryPage, 4> augment_warp(const BinaryPage& strip) {
  if (strip.width() <= 1 || strip.height() <= 1)
    throw Error(ErrorCode::invalid_argument, "strip must be larger than 1 pixel in each dimension");
  const auto warped = hinge_warp(strip);
  const auto mirrored_h = flip_horizontal(warped);
  return {warped, mirrored_h, flip_vertical(warped), flip_vertical(mirrored_h)};
}

}  // namespace textline
