#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "textline/error.hpp"
#include "textline/raster.hpp"

namespace textline {

// Squared distances are exact integers; kNoSite marks "no site anywhere".
inline constexpr std::uint32_t kNoSite = std::numeric_limits<std::uint32_t>::max();

using SquaredDistanceField = Grid<std::uint32_t>;

namespace detail {

inline constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();

// Lower envelope of parabolas (q - v)^2 + f(v) over the finite entries of f.
// Breakpoints are kept as exact rationals so ties never depend on rounding;
// with squared distances below 2^32 the cross products fit in 64 bits.
inline void squared_edt_1d(std::span<const std::int64_t> f, std::span<std::int64_t> out,
                           std::vector<std::int64_t>& v, std::vector<std::int64_t>& z_num,
                           std::vector<std::int64_t>& z_den) {
  const auto n = static_cast<std::int64_t>(f.size());
  v.clear();
  z_num.clear();
  z_den.clear();
  for (std::int64_t q = 0; q < n; ++q) {
    if (f[static_cast<std::size_t>(q)] == kInf) continue;
    const std::int64_t fq = f[static_cast<std::size_t>(q)] + q * q;
    while (!v.empty()) {
      const std::int64_t p = v.back();
      const std::int64_t num = fq - (f[static_cast<std::size_t>(p)] + p * p);
      const std::int64_t den = 2 * (q - p);
      // Drop p when the new intersection lies at or before p's left breakpoint.
      if (v.size() > 1 &&
          num * z_den.back() <= z_num.back() * den) {
        v.pop_back();
        z_num.pop_back();
        z_den.pop_back();
        continue;
      }
      break;
    }
    if (v.empty()) {
      v.push_back(q);
      z_num.push_back(0);  // left breakpoint unused for the first parabola
      z_den.push_back(1);
    } else {
      const std::int64_t p = v.back();
      v.push_back(q);
      z_num.push_back(fq - (f[static_cast<std::size_t>(p)] + p * p));
      z_den.push_back(2 * (q - p));
    }
  }
  if (v.empty()) {
    for (auto& o : out) o = kInf;
    return;
  }
  std::size_t k = 0;
  for (std::int64_t q = 0; q < n; ++q) {
    // Advance while the next parabola's breakpoint is strictly left of q.
    while (k + 1 < v.size() && z_num[k + 1] < q * z_den[k + 1]) ++k;
    const std::int64_t d = q - v[k];
    out[static_cast<std::size_t>(q)] = d * d + f[static_cast<std::size_t>(v[k])];
  }
}

}  // namespace detail

// Exact squared Euclidean distance from every pixel to the nearest pixel for
// which is_site(x, y) holds. Separable two-pass lower-envelope algorithm.
template <typename IsSite>
SquaredDistanceField squared_distance_transform(int width, int height, IsSite&& is_site) {
  const std::int64_t max_sq =
      static_cast<std::int64_t>(width) * width + static_cast<std::int64_t>(height) * height;
  if (max_sq >= static_cast<std::int64_t>(kNoSite))
    throw Error(ErrorCode::invalid_argument, "raster too large for 32-bit squared distances");

  std::vector<std::int64_t> columns(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
  std::vector<std::int64_t> v, zn, zd;
  {
    std::vector<std::int64_t> f(static_cast<std::size_t>(height)), g(static_cast<std::size_t>(height));
    for (int x = 0; x < width; ++x) {
      for (int y = 0; y < height; ++y) f[static_cast<std::size_t>(y)] = is_site(x, y) ? 0 : detail::kInf;
      detail::squared_edt_1d(f, g, v, zn, zd);
      for (int y = 0; y < height; ++y)
        columns[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)] =
            g[static_cast<std::size_t>(y)];
    }
  }
  SquaredDistanceField out(width, height, kNoSite);
  std::vector<std::int64_t> g(static_cast<std::size_t>(width));
  for (int y = 0; y < height; ++y) {
    std::span<const std::int64_t> f(columns.data() + static_cast<std::size_t>(y) * static_cast<std::size_t>(width),
                                    static_cast<std::size_t>(width));
    detail::squared_edt_1d(f, g, v, zn, zd);
    for (int x = 0; x < width; ++x) {
      const auto d = g[static_cast<std::size_t>(x)];
      out(x, y) = d == detail::kInf ? kNoSite : static_cast<std::uint32_t>(d);
    }
  }
  return out;
}

inline SquaredDistanceField squared_distance_transform(const BinaryPage& sites) {
  return squared_distance_transform(sites.width(), sites.height(),
                                    [&](int x, int y) { return sites.foreground(x, y); });
}

}  // namespace textline
