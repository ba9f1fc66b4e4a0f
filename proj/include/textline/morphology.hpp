#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <vector>

#include "textline/distance_transform.hpp"
#include "textline/raster.hpp"

namespace textline {

// Dilation by the digital disk {(dx, dy) : dx^2 + dy^2 <= radius^2}.
inline BinaryPage dilate_disk(const BinaryPage& src, int radius) {
  if (radius <= 0) return src;
  const auto sq = squared_distance_transform(src);
  const auto r2 = static_cast<std::uint32_t>(radius) * static_cast<std::uint32_t>(radius);
  BinaryPage out(src.width(), src.height());
  for (std::size_t i = 0; i < sq.size(); ++i) out[i] = sq[i] <= r2 ? 1 : 0;
  return out;
}

// Erosion by the same disk. Pixels outside the raster count as background.
inline BinaryPage erode_disk(const BinaryPage& src, int radius) {
  if (radius <= 0) return src;
  const int pad = 1;
  const int w = src.width() + 2 * pad, h = src.height() + 2 * pad;
  const auto sq = squared_distance_transform(w, h, [&](int x, int y) {
    const int sx = x - pad, sy = y - pad;
    return !src.contains(sx, sy) || !src.foreground(sx, sy);
  });
  const auto r2 = static_cast<std::uint32_t>(radius) * static_cast<std::uint32_t>(radius);
  BinaryPage out(src.width(), src.height());
  for (int y = 0; y < src.height(); ++y)
    for (int x = 0; x < src.width(); ++x) out.set(x, y, sq(x + pad, y + pad) > r2);
  return out;
}

// Morphological closing by a disk. The raster is padded first so that shapes
// touching the border are not eroded by the edge.
inline BinaryPage close_disk(const BinaryPage& src, int radius) {
  if (radius <= 0) return src;
  const int pad = radius + 1;
  BinaryPage padded(src.width() + 2 * pad, src.height() + 2 * pad);
  for (int y = 0; y < src.height(); ++y)
    for (int x = 0; x < src.width(); ++x) padded.set(x + pad, y + pad, src.foreground(x, y));
  const auto closed = erode_disk(dilate_disk(padded, radius), radius);
  BinaryPage out(src.width(), src.height());
  for (int y = 0; y < src.height(); ++y)
    for (int x = 0; x < src.width(); ++x) out.set(x, y, closed.foreground(x + pad, y + pad));
  return out;
}

// Zhang-Suen thinning to an 8-connected, one pixel wide skeleton.
inline BinaryPage thin(const BinaryPage& src) {
  const int w = src.width() + 2, h = src.height() + 2;
  std::vector<std::uint8_t> img(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), 0);
  auto at = [&](int x, int y) -> std::uint8_t& {
    return img[static_cast<std::size_t>(y) * static_cast<std::size_t>(w) + static_cast<std::size_t>(x)];
  };
  for (int y = 0; y < src.height(); ++y)
    for (int x = 0; x < src.width(); ++x) at(x + 1, y + 1) = src.foreground(x, y) ? 1 : 0;

  std::vector<std::size_t> to_clear;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int step = 0; step < 2; ++step) {
      to_clear.clear();
      for (int y = 1; y < h - 1; ++y) {
        for (int x = 1; x < w - 1; ++x) {
          if (!at(x, y)) continue;
          // P2..P9 clockwise starting north.
          const std::array<int, 8> p = {at(x, y - 1),     at(x + 1, y - 1), at(x + 1, y),
                                        at(x + 1, y + 1), at(x, y + 1),     at(x - 1, y + 1),
                                        at(x - 1, y),     at(x - 1, y - 1)};
          int neighbors = 0, transitions = 0;
          for (int i = 0; i < 8; ++i) {
            neighbors += p[static_cast<std::size_t>(i)];
            if (!p[static_cast<std::size_t>(i)] && p[static_cast<std::size_t>((i + 1) % 8)]) ++transitions;
          }
          if (neighbors < 2 || neighbors > 6 || transitions != 1) continue;
          if (step == 0) {
            if (p[0] * p[2] * p[4] != 0 || p[2] * p[4] * p[6] != 0) continue;
          } else {
            if (p[0] * p[2] * p[6] != 0 || p[0] * p[4] * p[6] != 0) continue;
          }
          to_clear.push_back(static_cast<std::size_t>(y) * static_cast<std::size_t>(w) + static_cast<std::size_t>(x));
        }
      }
      for (auto i : to_clear) img[i] = 0;
      if (!to_clear.empty()) changed = true;
    }
  }
  BinaryPage out(src.width(), src.height());
  for (int y = 0; y < src.height(); ++y)
    for (int x = 0; x < src.width(); ++x) out.set(x, y, at(x + 1, y + 1) != 0);
  return out;
}

}  // namespace textline
