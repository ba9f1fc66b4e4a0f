#include <gtest/gtest.h>

#include "support.hpp"

namespace {

using namespace textline;
using testkit::Gen;

void fill(BinaryPage& p, int x0, int y0, int x1, int y1) {
  for (int y = y0; y <= y1; ++y)
    for (int x = x0; x <= x1; ++x) p.set(x, y, true);
}

// Per-component nearest blob line at the rounded centroid, ties to the lower id.
LabelRaster nearest_blob_clustering(const BinaryPage& page, const BinaryPage& mask, Connectivity conn) {
  const auto blobs = build_blob_line_set(mask);
  LabelRaster out(page.width(), page.height());
  for (const auto& c : extract_components(page, conn)) {
    int best = 1;
    for (int l = 2; l <= blobs.count(); ++l)
      if (blobs.nearest_distance(l, c.centroid) < blobs.nearest_distance(best, c.centroid)) best = l;
    c.for_each_pixel([&](int x, int y) { out(x, y) = static_cast<std::uint32_t>(best); });
  }
  return out;
}

TEST(Extract, ThreeBarsThreeLines) {
  BinaryPage page(120, 90), mask(120, 90);
  LabelRaster gt(120, 90);
  for (int i = 0; i < 3; ++i) {
    const int y = 15 + 30 * i;
    fill(page, 10, y - 4, 110, y + 4);
    for (int x = 15; x <= 105; ++x) mask.set(x, y, true);
    for (int yy = y - 4; yy <= y + 4; ++yy)
      for (int x = 10; x <= 110; ++x) gt(x, yy) = static_cast<std::uint32_t>(i + 1);
  }
  const auto r = extract_lines(page, mask);
  EXPECT_EQ(r.line_count, 3);
  EXPECT_EQ(r.pixel_labels, gt);
  EXPECT_DOUBLE_EQ(testkit::line_iu(gt, r.pixel_labels), 1.0);
  EXPECT_TRUE(r.empty_lines.empty());
  ASSERT_EQ(r.polygons.size(), 3u);
  for (const auto& rings : r.polygons) EXPECT_EQ(rings.size(), 1u);
}

TEST(Extract, LambdaZeroEqualsNearestBlobClustering) {
  Gen g(81);
  for (int trial = 0; trial < 20; ++trial) {
    const int w = g.range(30, 90), h = g.range(30, 90);
    const auto page = g.page(w, h, 0.05);
    BinaryPage mask(w, h);
    for (int l = 0; l < g.range(1, 3); ++l) {
      const int y = 4 + l * (h / 3);
      for (int x = g.range(0, w / 3); x < w - g.range(0, w / 3); ++x) mask.set(x, y, true);
    }
    ExtractionParams params;
    params.lambda = 0.0;
    params.split_multiline_components = false;
    const auto r = extract_lines(page, mask, params);
    EXPECT_EQ(r.pixel_labels, nearest_blob_clustering(page, mask, params.connectivity));
  }
}

TEST(Extract, DiacriticFollowsItsWord) {
  const auto fx = testkit::diacritic_fixture();
  const auto r = extract_lines(fx.page, fx.mask);
  EXPECT_EQ(r.pixel_labels(90, 122), 1u);
  EXPECT_EQ(r.pixel_labels(60, 100), 1u);
  EXPECT_EQ(r.empty_lines, (std::vector<int>{2}));

  ExtractionParams params;
  params.lambda = 0.0;
  const auto r0 = extract_lines(fx.page, fx.mask, params);
  EXPECT_EQ(r0.pixel_labels(90, 122), 2u);

  // Brute force over all 2^3 labelings agrees with the default outcome.
  std::vector<Point2> centroids;
  for (const auto& d : r.diagnostics) centroids.push_back(d.centroid);
  const auto blobs = build_blob_line_set(fx.mask);
  const auto m = build_energy_model(centroids, blobs, build_neighbor_graph(centroids));
  const auto brute = testkit::brute_minimum(m);
  for (std::size_t i = 0; i < r.diagnostics.size(); ++i) EXPECT_EQ(r.diagnostics[i].label, brute.labels[i]);
  EXPECT_NEAR(r.energy, brute.energy, 1e-12);
}

TEST(Split, BridgeDividesAtMidpointTowardLowerId) {
  BinaryPage mask(30, 40), page(30, 40);
  for (int x = 0; x < 30; ++x) {
    mask.set(x, 10, true);
    mask.set(x, 20, true);
  }
  fill(page, 5, 10, 6, 20);
  const auto blobs = build_blob_line_set(mask);
  const auto comps = extract_components(page);
  ASSERT_EQ(comps.size(), 1u);
  const auto lines = intersecting_lines(comps[0], blobs);
  ASSERT_EQ(lines, (std::vector<int>{1, 2}));
  const auto split = split_multiline_component(comps[0], blobs, lines);
  std::size_t k = 0;
  comps[0].for_each_pixel([&](int x, int y) {
    const auto d1 = blobs.squared_distance(1, x, y), d2 = blobs.squared_distance(2, x, y);
    EXPECT_EQ(split[k], d2 < d1 ? 2 : 1) << x << "," << y;
    EXPECT_EQ(split[k], y <= 15 ? 1 : 2);
    ++k;
  });
  const auto r = extract_lines(page, mask);
  EXPECT_EQ(r.pixel_labels(5, 15), 1u);
  EXPECT_EQ(r.pixel_labels(5, 16), 2u);
  EXPECT_TRUE(r.diagnostics[0].split);
}

TEST(Split, SingleLineIsNoOp) {
  BinaryPage mask(30, 30), page(30, 30);
  for (int x = 0; x < 30; ++x) mask.set(x, 10, true);
  for (int x = 0; x < 30; ++x) mask.set(x, 25, true);
  fill(page, 3, 8, 12, 14);
  const auto blobs = build_blob_line_set(mask);
  const auto comps = extract_components(page);
  const auto lines = intersecting_lines(comps[0], blobs);
  ASSERT_EQ(lines, (std::vector<int>{1}));
  for (int v : split_multiline_component(comps[0], blobs, lines)) EXPECT_EQ(v, 1);
}

TEST(Split, PixelsOnABlobLineKeepIt) {
  Gen g(82);
  for (int trial = 0; trial < 30; ++trial) {
    const int w = g.range(20, 60), h = g.range(20, 60);
    const auto page = g.page(w, h, 0.5);
    const auto mask = g.page(w, h, 0.1);
    if (mask.count_foreground() == 0) continue;
    const auto blobs = build_blob_line_set(mask);
    for (const auto& c : extract_components(page)) {
      const auto lines = intersecting_lines(c, blobs);
      if (lines.empty()) continue;
      const auto split = split_multiline_component(c, blobs, lines);
      std::size_t k = 0;
      c.for_each_pixel([&](int x, int y) {
        const auto on = blobs.labels()(x, y);
        if (on) {
          EXPECT_EQ(split[k], static_cast<int>(on));
        }
        ++k;
      });
    }
  }
}

TEST(Extract, PixelConservationOnRandomPages) {
  Gen g(83);
  for (int trial = 0; trial < 25; ++trial) {
    const int w = g.range(20, 80), h = g.range(20, 80);
    const auto page = g.page(w, h, g.real(0.02, 0.3));
    auto mask = g.page(w, h, 0.01);
    mask.set(g.range(0, w - 1), g.range(0, h - 1), true);
    ExtractionParams params;
    params.split_multiline_components = g.coin();
    params.k = g.range(1, 6);
    const auto r = extract_lines(page, mask, params);
    EXPECT_EQ(r.line_count, build_blob_line_set(mask).count());
    for (std::size_t i = 0; i < page.size(); ++i) {
      ASSERT_EQ(page[i] != 0, r.pixel_labels[i] != 0);
      ASSERT_LE(r.pixel_labels[i], static_cast<std::uint32_t>(r.line_count));
    }
    for (int id = 1; id <= r.line_count; ++id) {
      bool present = false;
      for (std::size_t i = 0; i < page.size(); ++i) present |= r.pixel_labels[i] == static_cast<std::uint32_t>(id);
      const bool reported = std::count(r.empty_lines.begin(), r.empty_lines.end(), id) > 0;
      EXPECT_NE(present, reported) << id;
    }
  }
}

TEST(Extract, TranslationInvariant) {
  SynthSpec spec;
  spec.width = 300;
  spec.height = 260;
  spec.lines = 3;
  spec.seed = 5;
  const auto s = generate_synthetic_page(spec);
  const int dx = 17, dy = 9;
  BinaryPage page(s.page.width() + 40, s.page.height() + 30), mask(page.width(), page.height());
  for (int y = 0; y < s.page.height(); ++y)
    for (int x = 0; x < s.page.width(); ++x) {
      page.set(x + dx, y + dy, s.page.foreground(x, y));
      mask.set(x + dx, y + dy, s.blob_mask.foreground(x, y));
    }
  const auto a = extract_lines(s.page, s.blob_mask);
  const auto b = extract_lines(page, mask);
  for (int y = 0; y < s.page.height(); ++y)
    for (int x = 0; x < s.page.width(); ++x) ASSERT_EQ(a.pixel_labels(x, y), b.pixel_labels(x + dx, y + dy));
}

TEST(Extract, DimensionMismatch) {
  try {
    extract_lines(BinaryPage(10, 10), BinaryPage(10, 11));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::dimension_mismatch);
  }
}

TEST(Extract, EmptyMask) {
  BinaryPage page(10, 10);
  page.set(3, 3, true);
  try {
    extract_lines(page, BinaryPage(10, 10));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::no_blob_lines);
  }
}

TEST(Extract, BlankPageGivesEmptyLines) {
  BinaryPage mask(20, 20);
  mask.set(5, 5, true);
  const auto r = extract_lines(BinaryPage(20, 20), mask);
  EXPECT_EQ(r.line_count, 1);
  EXPECT_EQ(r.empty_lines, (std::vector<int>{1}));
  EXPECT_EQ(r.pixel_labels.max_label(), 0u);
}

TEST(Polygons, RectangleGivesItsBoundary) {
  LabelRaster r(40, 30);
  for (int y = 5; y < 15; ++y)
    for (int x = 8; x < 30; ++x) r(x, y) = 1;
  const auto p = polygons_from_labels(r);
  ASSERT_EQ(p.size(), 1u);
  ASSERT_EQ(p[0].size(), 1u);
  const std::vector<Point2> want{{8, 5}, {30, 5}, {30, 15}, {8, 15}};
  EXPECT_EQ(p[0][0].points, want);
}

TEST(Polygons, FarBlobsGiveTwoRings) {
  LabelRaster r(80, 30);
  for (int y = 5; y < 10; ++y)
    for (int x = 5; x < 10; ++x) {
      r(x, y) = 1;
      r(x + 50, y + 10) = 1;
    }
  EXPECT_EQ(polygons_from_labels(r)[0].size(), 2u);
}

TEST(Polygons, NearbyFragmentsMergeUnderClosing) {
  LabelRaster r(60, 30);
  for (int y = 10; y < 16; ++y)
    for (int x = 5; x < 20; ++x) {
      r(x, y) = 1;
      r(x + 22, y) = 1;
    }
  EXPECT_EQ(polygons_from_labels(r)[0].size(), 1u);
  EXPECT_EQ(polygons_from_labels(r, 0)[0].size(), 2u);
}

TEST(Polygons, ContainmentAndRingClosureOnRandomRasters) {
  Gen g(84);
  for (int trial = 0; trial < 30; ++trial) {
    const int w = g.range(5, 60), h = g.range(5, 60);
    LabelRaster r(w, h);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = g.coin(0.3) ? static_cast<std::uint32_t>(g.range(1, 4)) : 0;
    const int radius = g.range(0, 5);
    const auto polys = polygons_from_labels(r, radius);
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        const auto id = r(x, y);
        if (!id) continue;
        bool inside = false;
        for (const auto& ring : polys[id - 1]) inside |= point_in_ring(ring, {x + 0.5, y + 0.5});
        ASSERT_TRUE(inside) << x << "," << y << " id " << id;
      }
    for (const auto& rings : polys)
      for (const auto& ring : rings) {
        ASSERT_GE(ring.points.size(), 4u);
        for (std::size_t i = 0; i < ring.points.size(); ++i) {
          const auto& a = ring.points[i];
          const auto& b = ring.points[(i + 1) % ring.points.size()];
          EXPECT_TRUE(a.x == b.x || a.y == b.y) << "rings are axis-aligned crack paths";
        }
      }
  }
}

TEST(Polygons, RetracingPaintedRingsIsIdempotent) {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    SynthSpec spec;
    spec.seed = seed;
    spec.orientation = static_cast<LineOrientation>(seed % 3);
    const auto s = generate_synthetic_page(spec);
    const auto r = extract_lines(s.page, s.blob_mask);
    for (std::size_t id = 0; id < r.polygons.size(); ++id) {
      const auto painted = rasterize_rings(r.polygons[id], s.page.width(), s.page.height());
      LabelRaster single(painted.width(), painted.height());
      for (std::size_t i = 0; i < painted.size(); ++i) single[i] = painted[i] ? 1 : 0;
      const auto again = polygons_from_labels(single);
      ASSERT_EQ(again.size(), 1u);
      ASSERT_EQ(again[0].size(), r.polygons[id].size());
      for (std::size_t k = 0; k < again[0].size(); ++k) EXPECT_EQ(again[0][k].points, r.polygons[id][k].points);
    }
  }
}

}  // namespace
