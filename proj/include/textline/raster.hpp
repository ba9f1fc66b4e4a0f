#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "textline/error.hpp"

namespace textline {

struct PixelPos {
  int x = 0;
  int y = 0;

  friend bool operator==(const PixelPos&, const PixelPos&) = default;
  friend auto operator<=>(const PixelPos&, const PixelPos&) = default;
};

// Row-major 2-D grid of values. Width and height are always at least 1.
template <typename T>
class Grid {
 public:
  using value_type = T;

  Grid() = default;

  Grid(int width, int height, T fill = T{}) : width_(width), height_(height) {
    if (width < 1 || height < 1) {
      throw Error(ErrorCode::invalid_argument,
                  "raster dimensions must be positive, got " + std::to_string(width) + "x" +
                      std::to_string(height));
    }
    data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
  }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  bool contains(int x, int y) const noexcept {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }

  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  const T& operator()(int x, int y) const noexcept { return data_[index(x, y)]; }
  T& operator()(int x, int y) noexcept { return data_[index(x, y)]; }

  const T& operator[](std::size_t i) const noexcept { return data_[i]; }
  T& operator[](std::size_t i) noexcept { return data_[i]; }

  std::span<const T> values() const noexcept { return data_; }
  std::span<T> values() noexcept { return data_; }

  std::span<const T> row(int y) const noexcept {
    return std::span<const T>(data_).subspan(index(0, y), static_cast<std::size_t>(width_));
  }

  bool same_size(const auto& other) const noexcept {
    return width_ == other.width() && height_ == other.height();
  }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<T> data_;
};

// Bilevel page. A non-zero value is foreground (ink), independent of how the
// source file encodes it.
class BinaryPage : public Grid<std::uint8_t> {
 public:
  BinaryPage() = default;
  BinaryPage(int width, int height, bool fill = false)
      : Grid<std::uint8_t>(width, height, fill ? 1 : 0) {}

  bool foreground(int x, int y) const noexcept { return (*this)(x, y) != 0; }
  void set(int x, int y, bool on) noexcept { (*this)(x, y) = on ? 1 : 0; }

  std::size_t count_foreground() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(values().begin(), values().end(), [](std::uint8_t v) { return v != 0; }));
  }

  BinaryPage inverted() const {
    BinaryPage out(width(), height());
    for (std::size_t i = 0; i < size(); ++i) out[i] = (*this)[i] ? 0 : 1;
    return out;
  }

  friend bool operator==(const BinaryPage&, const BinaryPage&) = default;
};

// Per-pixel integer labels, 0 = background.
class LabelRaster : public Grid<std::uint32_t> {
 public:
  LabelRaster() = default;
  LabelRaster(int width, int height, std::uint32_t fill = 0)
      : Grid<std::uint32_t>(width, height, fill) {}

  std::uint32_t max_label() const noexcept {
    std::uint32_t m = 0;
    for (auto v : values()) m = std::max(m, v);
    return m;
  }

  // Distinct non-zero labels in ascending order.
  std::vector<std::uint32_t> distinct_labels() const {
    std::vector<std::uint32_t> ids;
    for (auto v : values())
      if (v != 0) ids.push_back(v);
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
  }

  // Renumbers labels to 1..K, preserving their relative order.
  LabelRaster compacted() const {
    const auto ids = distinct_labels();
    std::map<std::uint32_t, std::uint32_t> remap;
    for (std::size_t i = 0; i < ids.size(); ++i) remap[ids[i]] = static_cast<std::uint32_t>(i + 1);
    LabelRaster out(width(), height());
    for (std::size_t i = 0; i < size(); ++i) {
      const auto v = (*this)[i];
      out[i] = v == 0 ? 0 : remap[v];
    }
    return out;
  }

  BinaryPage foreground() const {
    BinaryPage out(width(), height());
    for (std::size_t i = 0; i < size(); ++i) out[i] = (*this)[i] != 0 ? 1 : 0;
    return out;
  }

  friend bool operator==(const LabelRaster&, const LabelRaster&) = default;
};

using Rgb = std::array<std::uint8_t, 3>;

class RgbImage : public Grid<Rgb> {
 public:
  RgbImage() = default;
  RgbImage(int width, int height, Rgb fill = {0, 0, 0}) : Grid<Rgb>(width, height, fill) {}

  friend bool operator==(const RgbImage&, const RgbImage&) = default;
};

// Deterministic color for a label id; id 0 is black. Multiplication by an odd
// constant is a bijection modulo 2^24, so ids below 2^24 never share a color.
inline Rgb label_color(std::uint32_t id) {
  const std::uint32_t packed = (id * 0x9E3779u) & 0xFFFFFFu;
  return {static_cast<std::uint8_t>(packed >> 16), static_cast<std::uint8_t>(packed >> 8),
          static_cast<std::uint8_t>(packed)};
}

}  // namespace textline
