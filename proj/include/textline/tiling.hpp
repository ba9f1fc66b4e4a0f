#pragma once

#include <vector>

#include "textline/error.hpp"
#include "textline/raster.hpp"

namespace textline {

// Sliding-window geometry: a window x window tile of which only the centered
// inner x inner part is kept. Consecutive tiles advance by `inner`.
struct TileSpec {
  int window = 350;
  int inner = 250;

  int margin() const noexcept { return (window - inner) / 2; }

  void validate() const {
    if (inner < 1 || window < inner || (window - inner) % 2 != 0)
      throw Error(ErrorCode::invalid_argument, "tile spec needs 1 <= inner <= window with an even difference");
  }
};

struct Tile {
  BinaryPage image;  // window x window
  PixelPos offset;   // inner window origin in page coordinates
};

// Number of tiles along a dimension of `extent` pixels.
inline int tile_count(int extent, const TileSpec& spec) { return (extent + spec.inner - 1) / spec.inner; }

// Tiles in row-major order (top row first). Each tile covers
// [offset - margin, offset - margin + window) of the page; everything outside
// the page is background padding.
inline std::vector<Tile> tile_page(const BinaryPage& page, const TileSpec& spec = {}) {
  spec.validate();
  const int nx = tile_count(page.width(), spec), ny = tile_count(page.height(), spec);
  const int m = spec.margin();
  std::vector<Tile> tiles;
  tiles.reserve(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny));
  for (int ty = 0; ty < ny; ++ty) {
    for (int tx = 0; tx < nx; ++tx) {
      Tile t{BinaryPage(spec.window, spec.window), {tx * spec.inner, ty * spec.inner}};
      for (int y = 0; y < spec.window; ++y) {
        const int py = t.offset.y - m + y;
        if (py < 0 || py >= page.height()) continue;
        for (int x = 0; x < spec.window; ++x) {
          const int px = t.offset.x - m + x;
          if (px >= 0 && px < page.width()) t.image(x, y) = page(px, py);
        }
      }
      tiles.push_back(std::move(t));
    }
  }
  return tiles;
}

// Reassembles per-tile predictions, copying only each tile's inner window.
// Fails when some page pixel is not covered by any inner window.
inline BinaryPage stitch_tiles(const std::vector<Tile>& tiles, int width, int height, const TileSpec& spec = {}) {
  spec.validate();
  BinaryPage out(width, height);
  BinaryPage covered(width, height);
  const int m = spec.margin();
  for (const auto& t : tiles) {
    if (t.image.width() != spec.window || t.image.height() != spec.window)
      throw Error(ErrorCode::dimension_mismatch, "tile size does not match the tile spec");
    for (int y = 0; y < spec.inner; ++y) {
      const int py = t.offset.y + y;
      if (py < 0 || py >= height) continue;
      for (int x = 0; x < spec.inner; ++x) {
        const int px = t.offset.x + x;
        if (px < 0 || px >= width) continue;
        out(px, py) = t.image(x + m, y + m);
        covered.set(px, py, true);
      }
    }
  }
  if (covered.count_foreground() != covered.size())
    throw Error(ErrorCode::missing_tiles, "tiles do not cover the whole page");
  return out;
}

}  // namespace textline
