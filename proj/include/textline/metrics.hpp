#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "textline/error.hpp"
#include "textline/geometry.hpp"
#include "textline/page_xml.hpp"
#include "textline/raster.hpp"

namespace textline {

inline constexpr double kDefaultMatchThreshold = 0.90;
inline constexpr double kDefaultIuThreshold = 0.75;

// A ground-truth or predicted line as a set of foreground pixel indices
// (y * width + x), sorted and unique.
struct EvalRegion {
  int id = 0;
  std::vector<std::uint64_t> pixels;

  std::size_t size() const noexcept { return pixels.size(); }
};

inline EvalRegion make_region(int id, std::vector<std::uint64_t> pixels) {
  std::sort(pixels.begin(), pixels.end());
  pixels.erase(std::unique(pixels.begin(), pixels.end()), pixels.end());
  return {id, std::move(pixels)};
}

inline std::size_t intersection_size(const EvalRegion& a, const EvalRegion& b) {
  std::size_t n = 0;
  auto i = a.pixels.begin(), j = b.pixels.begin();
  while (i != a.pixels.end() && j != b.pixels.end()) {
    if (*i < *j)
      ++i;
    else if (*j < *i)
      ++j;
    else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

// |G ∩ R| / |G ∪ R|.
inline double match_score(const EvalRegion& g, const EvalRegion& r) {
  const auto inter = intersection_size(g, r);
  const auto uni = g.size() + r.size() - inter;
  return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

// One region per non-zero label. When `foreground` is given, only its pixels count.
inline std::vector<EvalRegion> regions_from_labels(const LabelRaster& labels,
                                                   const BinaryPage* foreground = nullptr) {
  if (foreground && !labels.same_size(*foreground))
    throw Error(ErrorCode::dimension_mismatch, "label raster and page differ in size");
  std::map<std::uint32_t, std::vector<std::uint64_t>> sets;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto v = labels[i];
    if (v == 0 || (foreground && !(*foreground)[i])) continue;
    sets[v].push_back(i);
  }
  std::vector<EvalRegion> out;
  for (auto& [id, px] : sets) out.push_back({static_cast<int>(id), std::move(px)});
  return out;
}

// One region per polygon, or per line key when merge_by_line is set. Polygons
// are rasterized at pixel centers and intersected with the page foreground;
// regions left without foreground pixels are dropped.
inline std::vector<EvalRegion> regions_from_polygons(const std::vector<PageTextLine>& lines, int width, int height,
                                                     const BinaryPage* foreground, bool merge_by_line) {
  if (foreground && (foreground->width() != width || foreground->height() != height))
    throw Error(ErrorCode::dimension_mismatch, "PAGE XML and page image differ in size");
  std::vector<std::string> keys;
  std::map<std::string, std::vector<std::uint64_t>> merged;
  std::vector<EvalRegion> out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::vector<std::uint64_t> px;
    scan_ring(lines[i].ring, width, height, [&](int x, int y) {
      const auto idx = static_cast<std::uint64_t>(y) * static_cast<std::uint64_t>(width) + static_cast<std::uint64_t>(x);
      if (!foreground || (*foreground)[idx]) px.push_back(idx);
    });
    if (merge_by_line) {
      const auto& key = lines[i].line_key;
      if (!merged.count(key)) keys.push_back(key);
      auto& dst = merged[key];
      dst.insert(dst.end(), px.begin(), px.end());
    } else if (!px.empty()) {
      out.push_back(make_region(static_cast<int>(out.size()) + 1, std::move(px)));
    }
  }
  if (merge_by_line) {
    for (const auto& key : keys) {
      auto& px = merged[key];
      if (!px.empty()) out.push_back(make_region(static_cast<int>(out.size()) + 1, std::move(px)));
    }
  }
  return out;
}

struct RegionOverlap {
  std::size_t gt = 0;    // index into the GT list
  std::size_t pred = 0;  // index into the prediction list
  std::size_t intersection = 0;
  double score = 0.0;    // intersection over union
};

// Every (gt, pred) pair sharing at least one pixel, in (gt, pred) order.
inline std::vector<RegionOverlap> overlapping_pairs(const std::vector<EvalRegion>& gt,
                                                    const std::vector<EvalRegion>& pred) {
  std::vector<std::pair<std::uint64_t, std::int64_t>> tagged;  // pred indices stored as -(j + 1)
  for (std::size_t i = 0; i < gt.size(); ++i)
    for (auto p : gt[i].pixels) tagged.emplace_back(p, static_cast<std::int64_t>(i));
  for (std::size_t j = 0; j < pred.size(); ++j)
    for (auto p : pred[j].pixels) tagged.emplace_back(p, -static_cast<std::int64_t>(j) - 1);
  std::sort(tagged.begin(), tagged.end());
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> counts;
  std::vector<std::size_t> g_here, r_here;
  for (std::size_t a = 0; a < tagged.size();) {
    std::size_t b = a;
    g_here.clear();
    r_here.clear();
    for (; b < tagged.size() && tagged[b].first == tagged[a].first; ++b) {
      if (tagged[b].second >= 0)
        g_here.push_back(static_cast<std::size_t>(tagged[b].second));
      else
        r_here.push_back(static_cast<std::size_t>(-tagged[b].second - 1));
    }
    for (auto g : g_here)
      for (auto r : r_here) ++counts[{g, r}];
    a = b;
  }
  std::vector<RegionOverlap> out;
  out.reserve(counts.size());
  for (const auto& [key, inter] : counts) {
    const auto uni = gt[key.first].size() + pred[key.second].size() - inter;
    out.push_back({key.first, key.second, inter, static_cast<double>(inter) / static_cast<double>(uni)});
  }
  return out;
}

// Greedy one-to-one assignment by descending score (ties: lower GT index,
// then lower prediction index). Only pairs with score >= min_score qualify.
inline std::vector<RegionOverlap> greedy_one_to_one(std::vector<RegionOverlap> pairs, double min_score,
                                                    std::size_t gt_count, std::size_t pred_count) {
  std::erase_if(pairs, [&](const RegionOverlap& p) { return p.score < min_score; });
  std::sort(pairs.begin(), pairs.end(), [](const RegionOverlap& a, const RegionOverlap& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.gt != b.gt) return a.gt < b.gt;
    return a.pred < b.pred;
  });
  std::vector<bool> g_used(gt_count, false), r_used(pred_count, false);
  std::vector<RegionOverlap> matches;
  for (const auto& p : pairs) {
    if (g_used[p.gt] || r_used[p.pred]) continue;
    g_used[p.gt] = r_used[p.pred] = true;
    matches.push_back(p);
  }
  return matches;
}

struct RegionMatch {
  int gt_id = 0;
  int pred_id = 0;
  double score = 0.0;
};

struct Icdar2013Result {
  double detection_rate = 0.0;        // DR = M / N1
  double recognition_accuracy = 0.0;  // RA = M / N2
  double f_measure = 0.0;
  int matches = 0;                    // M
  int gt_count = 0;                   // N1
  int pred_count = 0;                 // N2
  double threshold = kDefaultMatchThreshold;
  std::vector<RegionMatch> pairs;
};

inline double f_measure(double dr, double ra) { return dr + ra > 0.0 ? 2.0 * dr * ra / (dr + ra) : 0.0; }

inline void check_threshold(double t) {
  if (!(t > 0.0 && t <= 1.0)) throw Error(ErrorCode::invalid_argument, "threshold must lie in (0, 1]");
}

inline Icdar2013Result evaluate_icdar2013(const std::vector<EvalRegion>& gt, const std::vector<EvalRegion>& pred,
                                          double threshold = kDefaultMatchThreshold) {
  check_threshold(threshold);
  Icdar2013Result res;
  res.threshold = threshold;
  res.gt_count = static_cast<int>(gt.size());
  res.pred_count = static_cast<int>(pred.size());
  const auto matches = greedy_one_to_one(overlapping_pairs(gt, pred), threshold, gt.size(), pred.size());
  res.matches = static_cast<int>(matches.size());
  for (const auto& m : matches) res.pairs.push_back({gt[m.gt].id, pred[m.pred].id, m.score});
  res.detection_rate = gt.empty() ? 0.0 : static_cast<double>(res.matches) / static_cast<double>(gt.size());
  res.recognition_accuracy = pred.empty() ? 0.0 : static_cast<double>(res.matches) / static_cast<double>(pred.size());
  res.f_measure = f_measure(res.detection_rate, res.recognition_accuracy);
  return res;
}

enum class LineStatus { correct, missed, extra, missed_and_extra };

inline const char* line_status_name(LineStatus s) {
  switch (s) {
    case LineStatus::correct: return "correct";
    case LineStatus::missed: return "missed";
    case LineStatus::extra: return "extra";
    case LineStatus::missed_and_extra: return "missed_and_extra";
  }
  return "unknown";
}

struct LineDiagnostic {
  int gt_id = 0;    // 0 for an unmatched prediction
  int pred_id = 0;  // 0 for an unmatched GT line
  double iu = 0.0;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  double precision = 0.0;
  double recall = 0.0;
  LineStatus status = LineStatus::missed;
};

struct Icdar2017Result {
  double pixel_iu = 0.0;
  double line_iu = 0.0;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  int correct_lines = 0;  // CL
  int missed_lines = 0;   // ML
  int extra_lines = 0;    // EL
  double threshold = kDefaultIuThreshold;
  std::vector<LineDiagnostic> lines;
};

// Pairs are matched one-to-one by descending IU. Pixel IU sums TP/FP/FN over
// matched pairs. A matched line is correct when precision and recall both
// reach the threshold; it counts as missed if recall falls short and extra if
// precision does. Unmatched GT lines are missed, unmatched predictions extra.
inline Icdar2017Result evaluate_icdar2017(const std::vector<EvalRegion>& gt, const std::vector<EvalRegion>& pred,
                                          double threshold = kDefaultIuThreshold) {
  check_threshold(threshold);
  Icdar2017Result res;
  res.threshold = threshold;
  if (gt.empty() && pred.empty()) return res;
  const auto matches =
      greedy_one_to_one(overlapping_pairs(gt, pred), std::numeric_limits<double>::min(), gt.size(), pred.size());
  std::vector<bool> g_used(gt.size(), false), r_used(pred.size(), false);
  for (const auto& m : matches) {
    g_used[m.gt] = r_used[m.pred] = true;
    LineDiagnostic d;
    d.gt_id = gt[m.gt].id;
    d.pred_id = pred[m.pred].id;
    d.iu = m.score;
    d.tp = m.intersection;
    d.fp = pred[m.pred].size() - m.intersection;
    d.fn = gt[m.gt].size() - m.intersection;
    d.precision = static_cast<double>(d.tp) / static_cast<double>(d.tp + d.fp);
    d.recall = static_cast<double>(d.tp) / static_cast<double>(d.tp + d.fn);
    const bool missed = d.recall < threshold;
    const bool extra = d.precision < threshold;
    if (!missed && !extra) {
      d.status = LineStatus::correct;
      ++res.correct_lines;
    } else {
      d.status = missed && extra ? LineStatus::missed_and_extra : (missed ? LineStatus::missed : LineStatus::extra);
      if (missed) ++res.missed_lines;
      if (extra) ++res.extra_lines;
    }
    res.tp += d.tp;
    res.fp += d.fp;
    res.fn += d.fn;
    res.lines.push_back(d);
  }
  for (std::size_t i = 0; i < gt.size(); ++i) {
    if (g_used[i]) continue;
    LineDiagnostic d;
    d.gt_id = gt[i].id;
    d.fn = gt[i].size();
    d.status = LineStatus::missed;
    ++res.missed_lines;
    res.lines.push_back(d);
  }
  for (std::size_t j = 0; j < pred.size(); ++j) {
    if (r_used[j]) continue;
    LineDiagnostic d;
    d.pred_id = pred[j].id;
    d.fp = pred[j].size();
    d.status = LineStatus::extra;
    ++res.extra_lines;
    res.lines.push_back(d);
  }
  const auto pix_den = res.tp + res.fp + res.fn;
  res.pixel_iu = pix_den == 0 ? 0.0 : static_cast<double>(res.tp) / static_cast<double>(pix_den);
  const int line_den = res.correct_lines + res.missed_lines + res.extra_lines;
  res.line_iu = line_den == 0 ? 0.0 : static_cast<double>(res.correct_lines) / static_cast<double>(line_den);
  return res;
}

struct EvalReport {
  std::optional<Icdar2013Result> icdar2013;
  std::optional<Icdar2017Result> icdar2017;
};

}  // namespace textline
