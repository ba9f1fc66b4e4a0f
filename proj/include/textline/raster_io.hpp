#pragma once

#include <png.h>

#include <csetjmp>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "textline/error.hpp"
#include "textline/raster.hpp"

namespace textline {

enum class Polarity { ink_dark, ink_light };

enum class LabelFileMode { indexed, distinct_colors };

// Decoded image samples, channel-interleaved. bit_depth is 8 or 16.
struct DecodedImage {
  int width = 0;
  int height = 0;
  int channels = 0;
  int bit_depth = 8;
  std::vector<std::uint16_t> samples;

  std::uint16_t sample(int x, int y, int c) const {
    return samples[(static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                    static_cast<std::size_t>(x)) *
                       static_cast<std::size_t>(channels) +
                   static_cast<std::size_t>(c)];
  }
  std::uint16_t max_value() const { return bit_depth == 16 ? 65535 : 255; }
};

namespace detail {

struct FileCloser {
  void operator()(std::FILE* f) const noexcept {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

inline FilePtr open_file(const std::filesystem::path& path, const char* mode) {
  FilePtr f(std::fopen(path.c_str(), mode));
  if (!f) throw Error(ErrorCode::io, "cannot open '" + path.string() + "'");
  return f;
}

inline DecodedImage read_png(const std::filesystem::path& path) {
  auto file = open_file(path, "rb");
  png_byte header[8] = {};
  if (std::fread(header, 1, 8, file.get()) != 8 || png_sig_cmp(header, 0, 8) != 0)
    throw Error(ErrorCode::io, "'" + path.string() + "' is not a PNG file");

  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw Error(ErrorCode::io, "libpng initialization failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw Error(ErrorCode::io, "libpng initialization failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw Error(ErrorCode::io, "corrupt PNG '" + path.string() + "'");
  }
  png_init_io(png, file.get());
  png_set_sig_bytes(png, 8);
  png_read_png(png, info, PNG_TRANSFORM_EXPAND | PNG_TRANSFORM_PACKING, nullptr);

  const auto width = static_cast<int>(png_get_image_width(png, info));
  const auto height = static_cast<int>(png_get_image_height(png, info));
  const int channels = png_get_channels(png, info);
  const int depth = png_get_bit_depth(png, info);
  png_bytepp rows = png_get_rows(png, info);

  DecodedImage img;
  img.width = width;
  img.height = height;
  img.channels = channels;
  img.bit_depth = depth == 16 ? 16 : 8;
  img.samples.resize(static_cast<std::size_t>(width) * static_cast<std::size_t>(height) *
                     static_cast<std::size_t>(channels));
  std::size_t k = 0;
  for (int y = 0; y < height; ++y) {
    const png_bytep row = rows[y];
    for (int i = 0; i < width * channels; ++i) {
      if (img.bit_depth == 16)
        img.samples[k++] = static_cast<std::uint16_t>((row[2 * i] << 8) | row[2 * i + 1]);
      else
        img.samples[k++] = row[i];
    }
  }
  png_destroy_read_struct(&png, &info, nullptr);
  if (width < 1 || height < 1)
    throw Error(ErrorCode::io, "zero-dimension image '" + path.string() + "'");
  return img;
}

inline void skip_pnm_space(std::istream& in) {
  while (in) {
    const int c = in.peek();
    if (c == '#') {
      std::string line;
      std::getline(in, line);
    } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      in.get();
    } else {
      break;
    }
  }
}

inline DecodedImage read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open '" + path.string() + "'");
  std::string magic(2, '\0');
  in.read(magic.data(), 2);
  if (magic != "P5") throw Error(ErrorCode::io, "'" + path.string() + "' is not a binary PGM (P5)");
  int width = 0, height = 0, maxval = 0;
  skip_pnm_space(in);
  in >> width;
  skip_pnm_space(in);
  in >> height;
  skip_pnm_space(in);
  in >> maxval;
  in.get();
  if (!in || maxval < 1 || maxval > 65535)
    throw Error(ErrorCode::io, "bad PGM header in '" + path.string() + "'");
  if (width < 1 || height < 1)
    throw Error(ErrorCode::io, "zero-dimension image '" + path.string() + "'");

  DecodedImage img;
  img.width = width;
  img.height = height;
  img.channels = 1;
  img.bit_depth = maxval > 255 ? 16 : 8;
  const std::size_t n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  const std::size_t bytes_per = maxval > 255 ? 2 : 1;
  std::vector<unsigned char> raw(n * bytes_per);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (static_cast<std::size_t>(in.gcount()) != raw.size())
    throw Error(ErrorCode::io, "truncated PGM '" + path.string() + "'");
  img.samples.resize(n);
  // Rescale to the full 8/16-bit range so thresholding is independent of maxval.
  const std::uint32_t full = img.bit_depth == 16 ? 65535u : 255u;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t v = bytes_per == 2 ? (static_cast<std::uint32_t>(raw[2 * i]) << 8) | raw[2 * i + 1]
                                           : raw[i];
    img.samples[i] = static_cast<std::uint16_t>((v * full + static_cast<std::uint32_t>(maxval) / 2) /
                                                static_cast<std::uint32_t>(maxval));
  }
  return img;
}

inline bool has_pgm_magic(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  char magic[2] = {};
  in.read(magic, 2);
  return in.gcount() == 2 && magic[0] == 'P' && magic[1] == '5';
}

// rows: one byte buffer per image row, already in PNG sample layout.
inline void write_png(const std::filesystem::path& path, int width, int height, int color_type,
                      int bit_depth, const std::vector<std::vector<png_byte>>& rows) {
  auto file = open_file(path, "wb");
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw Error(ErrorCode::io, "libpng initialization failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw Error(ErrorCode::io, "libpng initialization failed");
  }
  std::vector<png_bytep> row_ptrs(static_cast<std::size_t>(height));
  for (int y = 0; y < height; ++y)
    row_ptrs[static_cast<std::size_t>(y)] = const_cast<png_bytep>(rows[static_cast<std::size_t>(y)].data());
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw Error(ErrorCode::io, "failed writing PNG '" + path.string() + "'");
  }
  png_init_io(png, file.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height), bit_depth,
               color_type, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_write_image(png, row_ptrs.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

}  // namespace detail

// Reads PNG or binary PGM; the format is sniffed from the file header.
inline DecodedImage read_image(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path))
    throw Error(ErrorCode::io, "file not found '" + path.string() + "'");
  return detail::has_pgm_magic(path) ? detail::read_pgm(path) : detail::read_png(path);
}

// Gray value of a pixel on the image's native scale; color is averaged and
// alpha ignored.
inline std::uint32_t gray_value(const DecodedImage& img, int x, int y) {
  if (img.channels <= 2) return img.sample(x, y, 0);
  return (static_cast<std::uint32_t>(img.sample(x, y, 0)) + img.sample(x, y, 1) + img.sample(x, y, 2)) / 3;
}

inline BinaryPage to_binary_page(const DecodedImage& img, Polarity polarity) {
  BinaryPage page(img.width, img.height);
  const std::uint32_t mid = img.bit_depth == 16 ? 32768u : 128u;
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      const bool dark = gray_value(img, x, y) < mid;
      page.set(x, y, polarity == Polarity::ink_dark ? dark : !dark);
    }
  }
  return page;
}

inline BinaryPage load_binary_page(const std::filesystem::path& path, Polarity polarity) {
  return to_binary_page(read_image(path), polarity);
}

// 8-bit grayscale PNG; foreground is written black for ink_dark, white for ink_light.
inline void save_binary_page(const BinaryPage& page, const std::filesystem::path& path,
                             Polarity polarity = Polarity::ink_dark) {
  const png_byte on = polarity == Polarity::ink_dark ? 0 : 255;
  const png_byte off = polarity == Polarity::ink_dark ? 255 : 0;
  std::vector<std::vector<png_byte>> rows(static_cast<std::size_t>(page.height()));
  for (int y = 0; y < page.height(); ++y) {
    auto& row = rows[static_cast<std::size_t>(y)];
    row.resize(static_cast<std::size_t>(page.width()));
    for (int x = 0; x < page.width(); ++x) row[static_cast<std::size_t>(x)] = page.foreground(x, y) ? on : off;
  }
  detail::write_png(path, page.width(), page.height(), PNG_COLOR_TYPE_GRAY, 8, rows);
}

inline void save_rgb_image(const RgbImage& img, const std::filesystem::path& path) {
  std::vector<std::vector<png_byte>> rows(static_cast<std::size_t>(img.height()));
  for (int y = 0; y < img.height(); ++y) {
    auto& row = rows[static_cast<std::size_t>(y)];
    row.reserve(static_cast<std::size_t>(img.width()) * 3);
    for (int x = 0; x < img.width(); ++x)
      for (auto c : img(x, y)) row.push_back(c);
  }
  detail::write_png(path, img.width(), img.height(), PNG_COLOR_TYPE_RGB, 8, rows);
}

inline RgbImage colorize(const LabelRaster& r) {
  RgbImage out(r.width(), r.height());
  for (std::size_t i = 0; i < r.size(); ++i) out[i] = label_color(r[i]);
  return out;
}

inline void save_label_raster(const LabelRaster& r, const std::filesystem::path& path,
                              LabelFileMode mode = LabelFileMode::indexed) {
  if (mode == LabelFileMode::distinct_colors) {
    save_rgb_image(colorize(r), path);
    return;
  }
  if (r.max_label() > 65535)
    throw Error(ErrorCode::invalid_argument, "indexed label PNG holds at most 65535 labels");
  std::vector<std::vector<png_byte>> rows(static_cast<std::size_t>(r.height()));
  for (int y = 0; y < r.height(); ++y) {
    auto& row = rows[static_cast<std::size_t>(y)];
    row.reserve(static_cast<std::size_t>(r.width()) * 2);
    for (int x = 0; x < r.width(); ++x) {
      const auto v = r(x, y);
      row.push_back(static_cast<png_byte>(v >> 8));
      row.push_back(static_cast<png_byte>(v & 0xFF));
    }
  }
  detail::write_png(path, r.width(), r.height(), PNG_COLOR_TYPE_GRAY, 16, rows);
}

// Single-channel images are read as label ids directly. Color images get one
// id per distinct non-black color, numbered in raster order of first appearance.
inline LabelRaster load_label_raster(const std::filesystem::path& path) {
  const DecodedImage img = read_image(path);
  LabelRaster out(img.width, img.height);
  if (img.channels <= 2) {
    for (int y = 0; y < img.height; ++y)
      for (int x = 0; x < img.width; ++x) out(x, y) = img.sample(x, y, 0);
    return out;
  }
  std::map<std::uint64_t, std::uint32_t> ids;
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      const std::uint64_t key = (static_cast<std::uint64_t>(img.sample(x, y, 0)) << 32) |
                                (static_cast<std::uint64_t>(img.sample(x, y, 1)) << 16) |
                                img.sample(x, y, 2);
      if (key == 0) continue;
      auto [it, inserted] = ids.emplace(key, static_cast<std::uint32_t>(ids.size() + 1));
      out(x, y) = it->second;
    }
  }
  return out;
}

}  // namespace textline
