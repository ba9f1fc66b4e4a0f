#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "textline/error.hpp"
#include "textline/geometry.hpp"
#include "textline/polygons.hpp"
#include "textline/raster.hpp"

namespace textline {

enum class LineOrientation { horizontal, skewed, curved };

struct SynthSpec {
  int width = 800;   // layout canvas before any skew or curvature
  int height = 600;
  int margin = 40;
  int lines = 6;
  int x_height = 16;
  int gap = 44;  // background rows between consecutive lines
  int word_min = 8;  // word widths and spacing, in pixels
  int word_max = 28;
  int space_min = 4;
  int space_max = 10;
  LineOrientation orientation = LineOrientation::horizontal;
  double skew_degrees = 30.0;
  double curvature = 40.0;          // vertical sag, in pixels, at the page edges
  double diacritic_density = 0.5;   // expected marks per word
  double bridge_probability = 0.0;  // chance that a word is joined to the line below
  int band_thickness = 6;           // blob line thickness in the ground-truth mask
  std::uint64_t seed = 1;
};

struct SyntheticPage {
  BinaryPage page;
  LabelRaster labels;  // line ids 1..lines, top to bottom in layout order
  BinaryPage blob_mask;
  std::vector<std::vector<Ring>> polygons;
  int word_count = 0;
  int diacritic_count = 0;
  int bridge_count = 0;
};

namespace detail {

// Engine-only sampling keeps the corpus identical across standard libraries.
class SynthRng {
 public:
  explicit SynthRng(std::uint64_t seed) : engine_(seed) {}

  int uniform(int lo, int hi) {  // inclusive
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(engine_() % span);
  }
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

struct Word {
  int x0 = 0;
  int x1 = 0;  // exclusive
};

}  // namespace detail

inline SyntheticPage generate_synthetic_page(const SynthSpec& spec) {
  if (spec.lines < 1) throw Error(ErrorCode::infeasible, "synthetic page needs at least one line");
  if (spec.gap < 1) throw Error(ErrorCode::infeasible, "interline gap must be at least 1 pixel");
  if (spec.x_height < 4 || spec.band_thickness < 1 || spec.band_thickness >= spec.x_height)
    throw Error(ErrorCode::infeasible, "band thickness must be positive and thinner than the x-height");
  if (spec.word_min < 3 || spec.word_max < spec.word_min || spec.space_min < 1 || spec.space_max < spec.space_min)
    throw Error(ErrorCode::infeasible, "word widths need 3 <= min <= max and spaces 1 <= min <= max");
  const int pitch = spec.x_height + spec.gap;
  if (spec.lines * pitch > spec.height - 2 * spec.margin || spec.width - 2 * spec.margin < spec.word_max + 20)
    throw Error(ErrorCode::infeasible, std::to_string(spec.lines) + " lines of pitch " + std::to_string(pitch) +
                                           " do not fit on a " + std::to_string(spec.width) + "x" +
                                           std::to_string(spec.height) + " page");

  detail::SynthRng rng(spec.seed);
  LabelRaster labels(spec.width, spec.height);
  BinaryPage band(spec.width, spec.height);
  SyntheticPage out;

  const int half = spec.x_height / 2;
  std::vector<int> centers(static_cast<std::size_t>(spec.lines));
  for (int i = 0; i < spec.lines; ++i)
    centers[static_cast<std::size_t>(i)] = spec.margin + i * pitch + pitch / 2;
  auto band_top = [&](int line) { return centers[static_cast<std::size_t>(line)] - spec.band_thickness / 2; };
  auto band_bottom = [&](int line) { return band_top(line) + spec.band_thickness - 1; };

  // Words: rectangles whose top edge follows a small sinusoid.
  std::vector<std::vector<detail::Word>> words(static_cast<std::size_t>(spec.lines));
  std::vector<double> phase(static_cast<std::size_t>(spec.lines));
  auto word_top = [&](int line, int x) {
    const double wave = 2.0 * std::sin(2.0 * std::numbers::pi * x / 23.0 + phase[static_cast<std::size_t>(line)]);
    return centers[static_cast<std::size_t>(line)] - half + static_cast<int>(std::lround(wave));
  };
  auto word_bottom = [&](int line) { return centers[static_cast<std::size_t>(line)] + half - 1; };

  for (int i = 0; i < spec.lines; ++i) {
    phase[static_cast<std::size_t>(i)] = rng.unit() * 2.0 * std::numbers::pi;
    int x = spec.margin + rng.uniform(0, 20);
    const int right = spec.width - spec.margin;
    auto& line_words = words[static_cast<std::size_t>(i)];
    while (x + spec.word_min <= right) {
      const int w = std::min(rng.uniform(spec.word_min, spec.word_max), right - x);
      line_words.push_back({x, x + w});
      x += w + rng.uniform(spec.space_min, spec.space_max);
    }
    for (const auto& wd : line_words) {
      for (int cx = wd.x0; cx < wd.x1; ++cx)
        for (int cy = word_top(i, cx); cy <= word_bottom(i); ++cy) labels(cx, cy) = static_cast<std::uint32_t>(i + 1);
    }
    const int b0 = line_words.front().x0, b1 = line_words.back().x1;
    for (int cy = band_top(i); cy <= band_bottom(i); ++cy)
      for (int cx = b0; cx < b1; ++cx) band.set(cx, cy, true);
    out.word_count += static_cast<int>(line_words.size());
  }

  // Diacritics float just above or below their word.
  for (int i = 0; i < spec.lines; ++i) {
    for (const auto& wd : words[static_cast<std::size_t>(i)]) {
      int marks = static_cast<int>(spec.diacritic_density);
      if (rng.unit() < spec.diacritic_density - marks) ++marks;
      for (int k = 0; k < marks; ++k) {
        const int size = rng.uniform(3, 4);
        const int dx = rng.uniform(wd.x0, std::max(wd.x0, wd.x1 - size));
        const int clearance = rng.uniform(3, std::max(3, std::min(6, spec.gap / 2 - size - 1)));
        const bool above = rng.unit() < 0.5;
        int top = 0;
        if (above) {
          int min_top = word_bottom(i);
          for (int cx = dx; cx < dx + size; ++cx) min_top = std::min(min_top, word_top(i, cx));
          top = min_top - clearance - size;
        } else {
          top = word_bottom(i) + clearance + 1;
        }
        for (int cy = top; cy < top + size; ++cy)
          for (int cx = dx; cx < dx + size; ++cx)
            if (labels.contains(cx, cy)) labels(cx, cy) = static_cast<std::uint32_t>(i + 1);
        ++out.diacritic_count;
      }
    }
  }

  // Vertical bridges joining a word to the word below; each bridge pixel
  // belongs to the line whose blob band is nearer (ties to the upper line).
  if (spec.bridge_probability > 0.0) {
    for (int i = 0; i + 1 < spec.lines; ++i) {
      for (const auto& wd : words[static_cast<std::size_t>(i)]) {
        if (rng.unit() >= spec.bridge_probability) continue;
        const int bx = rng.uniform(wd.x0, wd.x1 - 2);
        bool below_has_word = false;
        for (const auto& other : words[static_cast<std::size_t>(i + 1)])
          if (bx >= other.x0 && bx + 2 <= other.x1) below_has_word = true;
        if (!below_has_word) continue;
        for (int cx = bx; cx < bx + 2; ++cx) {
          const int y0 = word_bottom(i) + 1, y1 = word_top(i + 1, cx) - 1;
          for (int cy = y0; cy <= y1; ++cy) {
            const int d_up = cy - band_bottom(i), d_down = band_top(i + 1) - cy;
            labels(cx, cy) = static_cast<std::uint32_t>(d_up <= d_down ? i + 1 : i + 2);
          }
        }
        ++out.bridge_count;
      }
    }
  }

  // Map the layout onto the output page.
  auto resample = [&](int out_w, int out_h, auto&& to_layout) {
    LabelRaster l(out_w, out_h);
    BinaryPage b(out_w, out_h);
    for (int y = 0; y < out_h; ++y) {
      for (int x = 0; x < out_w; ++x) {
        double lx = 0.0, ly = 0.0;
        to_layout(x, y, lx, ly);
        const auto ix = static_cast<int>(std::lround(lx)), iy = static_cast<int>(std::lround(ly));
        if (!labels.contains(ix, iy)) continue;
        l(x, y) = labels(ix, iy);
        b(x, y) = band(ix, iy);
      }
    }
    labels = std::move(l);
    band = std::move(b);
  };
  if (spec.orientation == LineOrientation::skewed) {
    const double t = spec.skew_degrees * std::numbers::pi / 180.0;
    const double c = std::cos(t), s = std::sin(t);
    const int out_w = static_cast<int>(std::ceil(std::abs(spec.width * c) + std::abs(spec.height * s)));
    const int out_h = static_cast<int>(std::ceil(std::abs(spec.width * s) + std::abs(spec.height * c)));
    const double lcx = (spec.width - 1) / 2.0, lcy = (spec.height - 1) / 2.0;
    const double ocx = (out_w - 1) / 2.0, ocy = (out_h - 1) / 2.0;
    // Counter-clockwise on screen: rotate page coordinates back by -t.
    resample(out_w, out_h, [&](int x, int y, double& lx, double& ly) {
      const double dx = x - ocx, dy = y - ocy;
      lx = lcx + c * dx - s * dy;
      ly = lcy + s * dx + c * dy;
    });
  } else if (spec.orientation == LineOrientation::curved) {
    const double sag = spec.curvature;
    const double xc = (spec.width - 1) / 2.0;
    const double k = 4.0 * sag / (static_cast<double>(spec.width) * spec.width);
    const int extra = static_cast<int>(std::ceil(std::abs(sag)));
    resample(spec.width, spec.height + extra, [&](int x, int y, double& lx, double& ly) {
      lx = x;
      ly = y - (sag >= 0 ? 0.0 : static_cast<double>(extra)) - k * (x - xc) * (x - xc) +
           (sag >= 0 ? sag : 0.0);
    });
  }

  out.labels = std::move(labels);
  out.page = out.labels.foreground();
  out.blob_mask = std::move(band);
  out.polygons = polygons_from_labels(out.labels);
  return out;
}

}  // namespace textline
