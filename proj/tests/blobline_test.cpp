#include <gtest/gtest.h>

#include <cmath>
#include <fstream>

#include "support.hpp"

namespace {

using namespace textline;
using testkit::Gen;

Ring rect(double x0, double y0, double x1, double y1) { return Ring{{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}}; }

TEST(DistanceTransform, MatchesBruteForceOnRandomMasks) {
  Gen g(31);
  for (int trial = 0; trial < 40; ++trial) {
    const int w = g.range(1, 40), h = g.range(1, 40);
    const auto sites = g.page(w, h, g.real(0.005, 0.2));
    const auto field = squared_distance_transform(sites);
    const bool any = sites.count_foreground() > 0;
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        if (!any) {
          ASSERT_EQ(field(x, y), kNoSite);
          continue;
        }
        const auto want = testkit::brute_sq_distance(w, h, [&](int sx, int sy) { return sites.foreground(sx, sy); }, x, y);
        ASSERT_EQ(static_cast<std::int64_t>(field(x, y)), want) << x << "," << y;
      }
  }
}

TEST(DistanceTransform, SingleSiteGivesExactSquares) {
  BinaryPage p(17, 9);
  p.set(4, 6, true);
  const auto f = squared_distance_transform(p);
  for (int y = 0; y < 9; ++y)
    for (int x = 0; x < 17; ++x) EXPECT_EQ(f(x, y), static_cast<std::uint32_t>((x - 4) * (x - 4) + (y - 6) * (y - 6)));
}

TEST(BlobLines, EmptyMaskIsAnError) {
  try {
    build_blob_line_set(BinaryPage(10, 10));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::no_blob_lines);
    EXPECT_STREQ(e.what(), "no blob lines detected");
  }
}

TEST(BlobLines, HorizontalBarDistanceAbove) {
  BinaryPage m(40, 30);
  for (int x = 5; x < 35; ++x) m.set(x, 20, true);
  const auto s = build_blob_line_set(m);
  EXPECT_EQ(s.count(), 1);
  EXPECT_DOUBLE_EQ(nearest_blob_distance(s, 1, {20.0, 15.0}), 5.0);
  EXPECT_DOUBLE_EQ(nearest_blob_distance(s, 1, {20.0, 25.0}), nearest_blob_distance(s, 1, {20.0, 15.0}));
  EXPECT_DOUBLE_EQ(nearest_blob_distance(s, 1, {12.0, 20.0}), 0.0);
}

TEST(BlobLines, ThreeBarsThreeLabels) {
  BinaryPage m(30, 30);
  for (int x = 2; x < 28; ++x) {
    m.set(x, 5, true);
    m.set(x, 15, true);
    m.set(x, 25, true);
  }
  const auto s = build_blob_line_set(m);
  EXPECT_EQ(s.count(), 3);
  for (int x = 2; x < 28; ++x) EXPECT_EQ(s.distance(2, x, 15), 0.0);
  EXPECT_EQ(s.labels()(10, 5), 1u);
  EXPECT_EQ(s.labels()(10, 25), 3u);
}

TEST(BlobLines, SinglePixelPythagorean) {
  BinaryPage m(20, 20);
  m.set(13, 14, true);
  const auto s = build_blob_line_set(m);
  double brute = 1e9;
  for (int y = 0; y < 20; ++y)
    for (int x = 0; x < 20; ++x)
      if (m.foreground(x, y)) brute = std::min(brute, std::hypot(x - 10.0, y - 10.0));
  EXPECT_DOUBLE_EQ(nearest_blob_distance(s, 1, {10.0, 10.0}), brute);
  EXPECT_DOUBLE_EQ(brute, 5.0);
}

TEST(BlobLines, RealCentroidsRoundToNearestPixel) {
  BinaryPage m(20, 20);
  m.set(13, 14, true);
  const auto s = build_blob_line_set(m);
  EXPECT_DOUBLE_EQ(nearest_blob_distance(s, 1, {12.6, 13.7}), 0.0);
  EXPECT_GT(nearest_blob_distance(s, 1, {12.4, 13.7}), 0.0);
}

TEST(BlobLines, LabelOutOfRangeThrows) {
  BinaryPage m(5, 5);
  m.set(2, 2, true);
  const auto s = build_blob_line_set(m);
  EXPECT_THROW(nearest_blob_distance(s, 0, {1, 1}), Error);
  EXPECT_THROW(nearest_blob_distance(s, 2, {1, 1}), Error);
}

TEST(BlobLines, FieldsMatchBruteForcePerLabel) {
  Gen g(41);
  for (int trial = 0; trial < 15; ++trial) {
    const int w = g.range(4, 32), h = g.range(4, 32);
    auto mask = g.page(w, h, 0.03);
    mask.set(0, 0, true);
    const auto s = build_blob_line_set(mask);
    const auto& lab = s.labels();
    for (int l = 1; l <= s.count(); ++l)
      for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
          const auto want = testkit::brute_sq_distance(
              w, h, [&](int sx, int sy) { return lab(sx, sy) == static_cast<std::uint32_t>(l); }, x, y);
          ASSERT_EQ(static_cast<std::int64_t>(s.squared_distance(l, x, y)), want);
          if (lab(x, y) == static_cast<std::uint32_t>(l)) {
            ASSERT_EQ(s.distance(l, x, y), 0.0);
          }
        }
  }
}

TEST(Skeleton, RectangleGivesLongContainedStroke) {
  const Ring r = rect(50, 40, 250, 60);
  const auto mask = skeleton_labels_from_polygons({r}, 300, 100);
  const auto interior = rasterize_rings({r}, 300, 100);
  ASSERT_GT(mask.count_foreground(), 0u);
  int min_x = 1000, max_x = -1, min_y = 1000, max_y = -1;
  for (int y = 0; y < 100; ++y)
    for (int x = 0; x < 300; ++x)
      if (mask.foreground(x, y)) {
        EXPECT_TRUE(interior.foreground(x, y));
        min_x = std::min(min_x, x);
        max_x = std::max(max_x, x);
        min_y = std::min(min_y, y);
        max_y = std::max(max_y, y);
      }
  EXPECT_GE(max_x - min_x + 1, 180);
  EXPECT_LE(max_y - min_y + 1, 13);
  EXPECT_GE(max_y - min_y + 1, 11);
  EXPECT_EQ(extract_components(mask).size(), 1u);
}

TEST(Skeleton, EmptyListGivesBlankMask) {
  const auto mask = skeleton_labels_from_polygons({}, 50, 50);
  EXPECT_EQ(mask.count_foreground(), 0u);
  EXPECT_THROW(build_blob_line_set(mask), Error);
}

TEST(Skeleton, TwoRectanglesTwoComponents) {
  const auto mask = skeleton_labels_from_polygons({rect(10, 10, 190, 40), rect(10, 60, 190, 90)}, 200, 100);
  EXPECT_EQ(extract_components(mask).size(), 2u);
}

TEST(Skeleton, DegeneratePolygonIsSkippedWithWarning) {
  std::vector<std::string> warnings;
  const Ring flat{{{10, 10}, {50, 10}, {90, 10}}};
  const auto mask = skeleton_labels_from_polygons({flat, rect(10, 20, 90, 40)}, 100, 50, 12, &warnings);
  EXPECT_EQ(warnings.size(), 1u);
  EXPECT_EQ(extract_components(mask).size(), 1u);
}

TEST(Skeleton, ConvexPolygonsStayInside) {
  Gen g(51);
  for (int trial = 0; trial < 20; ++trial) {
    // Random convex polygon: points on an ellipse at sorted angles.
    const double cx = g.real(40, 80), cy = g.real(40, 80), rx = g.real(10, 35), ry = g.real(6, 30);
    std::vector<double> angles;
    for (int i = 0; i < g.range(3, 9); ++i) angles.push_back(g.real(0, 2 * 3.14159265358979));
    std::sort(angles.begin(), angles.end());
    Ring r;
    for (double a : angles) r.points.push_back({cx + rx * std::cos(a), cy + ry * std::sin(a)});
    const auto mask = skeleton_labels_from_polygons({r}, 128, 128, g.range(2, 16));
    for (int y = 0; y < 128; ++y)
      for (int x = 0; x < 128; ++x)
        if (mask.foreground(x, y)) {
          ASSERT_TRUE(point_in_ring(r, {x + 0.5, y + 0.5}));
        }
  }
}

TEST(Skeleton, ThinningKeepsOnePixelWidth) {
  BinaryPage p(60, 20);
  for (int y = 5; y < 15; ++y)
    for (int x = 5; x < 55; ++x) p.set(x, y, true);
  const auto s = thin(p);
  const auto path = detail::longest_skeleton_path(s);
  EXPECT_GE(path.size(), 35u);
  for (int x = 15; x < 45; ++x) {
    int n = 0;
    for (int y = 0; y < 20; ++y) n += s.foreground(x, y);
    EXPECT_EQ(n, 1) << x;
  }
}

TEST(PageXml, ReadsPointsAndPointChildren) {
  const auto dir = testkit::scratch_dir("pagexml");
  {
    std::ofstream out(dir / "p.xml");
    out << R"(<?xml version="1.0"?>
<pc:PcGts xmlns:pc="http://schema.primaresearch.org/PAGE/gts/pagecontent/2013-07-15">
  <pc:Page imageFilename="x.png" imageWidth="100" imageHeight="50">
    <pc:TextRegion id="r1">
      <pc:TextLine id="a" custom="readingOrder {index:0;} lineId:7;"><pc:Coords points="1,2 30,2 30,9 1,9"/></pc:TextLine>
      <pc:TextLine id="b"><pc:Coords><pc:Point x="5" y="20"/><pc:Point x="40" y="20"/><pc:Point x="40" y="30"/></pc:Coords></pc:TextLine>
    </pc:TextRegion>
  </pc:Page>
</pc:PcGts>)";
  }
  const auto doc = read_page_xml(dir / "p.xml");
  EXPECT_EQ(doc.width, 100);
  EXPECT_EQ(doc.height, 50);
  ASSERT_EQ(doc.lines.size(), 2u);
  EXPECT_EQ(doc.lines[0].ring.points.size(), 4u);
  EXPECT_EQ(doc.lines[0].line_key, "7");
  EXPECT_EQ(doc.lines[1].line_key, "b");
  EXPECT_DOUBLE_EQ(doc.lines[1].ring.points[2].y, 30.0);
}

TEST(PageXml, WriteReadRoundTrip) {
  const auto dir = testkit::scratch_dir("pagexml_rt");
  const std::vector<std::vector<Ring>> lines{{rect(1, 1, 20, 5), rect(30, 1, 40, 5)}, {}, {rect(1, 10, 20, 15)}};
  write_page_xml(dir / "o.xml", 50, 20, "page.png", lines);
  const auto doc = read_page_xml(dir / "o.xml");
  ASSERT_EQ(doc.lines.size(), 3u);
  EXPECT_EQ(doc.lines[0].line_key, doc.lines[1].line_key);
  EXPECT_NE(doc.lines[0].line_key, doc.lines[2].line_key);
  EXPECT_EQ(doc.lines[2].ring.points, lines[2][0].points);
}

TEST(PageXml, MalformedFileIsParseError) {
  const auto dir = testkit::scratch_dir("pagexml_bad");
  {
    std::ofstream out(dir / "bad.xml");
    out << "<PcGts><Page";
  }
  try {
    read_page_xml(dir / "bad.xml");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::parse);
  }
}

}  // namespace
