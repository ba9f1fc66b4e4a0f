#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <vector>

#include "textline/raster.hpp"

namespace textline {

enum class Connectivity { four = 4, eight = 8 };

// Horizontal run of foreground pixels [x_begin, x_end) on row y.
struct PixelRun {
  int y = 0;
  int x_begin = 0;
  int x_end = 0;

  int length() const noexcept { return x_end - x_begin; }
  friend bool operator==(const PixelRun&, const PixelRun&) = default;
};

struct BoundingBox {
  int min_x = 0;
  int min_y = 0;
  int max_x = 0;  // inclusive
  int max_y = 0;  // inclusive

  int width() const noexcept { return max_x - min_x + 1; }
  int height() const noexcept { return max_y - min_y + 1; }
  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point2&, const Point2&) = default;
};

// One connected foreground region. Runs are sorted by (y, x_begin).
struct Component {
  int id = 0;
  std::vector<PixelRun> runs;
  Point2 centroid;
  BoundingBox bbox;
  std::size_t area = 0;

  template <typename Fn>
  void for_each_pixel(Fn&& fn) const {
    for (const auto& r : runs)
      for (int x = r.x_begin; x < r.x_end; ++x) fn(x, r.y);
  }

  std::vector<PixelPos> pixels() const {
    std::vector<PixelPos> out;
    out.reserve(area);
    for_each_pixel([&](int x, int y) { out.push_back({x, y}); });
    return out;
  }
};

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n = 0) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0u); }

  std::uint32_t add() {
    parent_.push_back(static_cast<std::uint32_t>(parent_.size()));
    return parent_.back();
  }

  std::uint32_t find(std::uint32_t a) {
    while (parent_[a] != a) {
      parent_[a] = parent_[parent_[a]];
      a = parent_[a];
    }
    return a;
  }

  // Keeps the smaller root so labels stay ordered by first appearance.
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b)
      parent_[b] = a;
    else
      parent_[a] = b;
  }

  std::size_t size() const noexcept { return parent_.size(); }

 private:
  std::vector<std::uint32_t> parent_;
};

}  // namespace detail

// Run-based two-pass labeling. Components are numbered 1..N in raster order of
// their first (top-most, then left-most) pixel.
inline std::vector<Component> extract_components(const BinaryPage& page,
                                                 Connectivity connectivity = Connectivity::eight) {
  const int reach = connectivity == Connectivity::eight ? 1 : 0;
  std::vector<PixelRun> runs;
  std::vector<std::uint32_t> run_label;
  detail::UnionFind uf;

  std::size_t prev_begin = 0, prev_end = 0;
  for (int y = 0; y < page.height(); ++y) {
    const std::size_t row_begin = runs.size();
    const auto row = page.row(y);
    int x = 0;
    const int w = page.width();
    std::size_t scan = prev_begin;
    while (x < w) {
      if (!row[static_cast<std::size_t>(x)]) {
        ++x;
        continue;
      }
      const int start = x;
      while (x < w && row[static_cast<std::size_t>(x)]) ++x;
      PixelRun run{y, start, x};
      std::uint32_t label = uf.add();
      // Runs on the previous row overlapping [start - reach, x + reach).
      while (scan < prev_end && runs[scan].x_end + reach <= start) ++scan;
      for (std::size_t k = scan; k < prev_end && runs[k].x_begin < x + reach; ++k)
        uf.unite(label, run_label[k]);
      runs.push_back(run);
      run_label.push_back(label);
    }
    prev_begin = row_begin;
    prev_end = runs.size();
  }

  // Resolve roots to dense ids in order of first appearance (raster order of runs).
  std::vector<std::int64_t> dense(uf.size(), -1);
  std::vector<Component> comps;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto root = uf.find(run_label[i]);
    if (dense[root] < 0) {
      dense[root] = static_cast<std::int64_t>(comps.size());
      Component c;
      c.id = static_cast<int>(comps.size()) + 1;
      c.bbox = {runs[i].x_begin, runs[i].y, runs[i].x_end - 1, runs[i].y};
      comps.push_back(std::move(c));
    }
    comps[static_cast<std::size_t>(dense[root])].runs.push_back(runs[i]);
  }

  for (auto& c : comps) {
    double sx = 0.0, sy = 0.0;
    std::size_t area = 0;
    for (const auto& r : c.runs) {
      const auto n = static_cast<std::size_t>(r.length());
      area += n;
      // Sum of x over [b, e) = n * (b + e - 1) / 2.
      sx += static_cast<double>(n) * (static_cast<double>(r.x_begin) + static_cast<double>(r.x_end - 1)) / 2.0;
      sy += static_cast<double>(n) * static_cast<double>(r.y);
      c.bbox.min_x = std::min(c.bbox.min_x, r.x_begin);
      c.bbox.max_x = std::max(c.bbox.max_x, r.x_end - 1);
      c.bbox.min_y = std::min(c.bbox.min_y, r.y);
      c.bbox.max_y = std::max(c.bbox.max_y, r.y);
    }
    c.area = area;
    c.centroid = {sx / static_cast<double>(area), sy / static_cast<double>(area)};
  }
  return comps;
}

// Raster of component ids (0 = background).
inline LabelRaster component_raster(const std::vector<Component>& comps, int width, int height) {
  LabelRaster out(width, height);
  for (const auto& c : comps)
    c.for_each_pixel([&](int x, int y) { out(x, y) = static_cast<std::uint32_t>(c.id); });
  return out;
}

}  // namespace textline
