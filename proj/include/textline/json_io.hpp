#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "textline/error.hpp"
#include "textline/extract.hpp"
#include "textline/metrics.hpp"
#include "textline/tiling.hpp"

namespace textline {

using Json = nlohmann::ordered_json;

inline Json to_json(const Icdar2013Result& r) {
  Json pairs = Json::array();
  for (const auto& p : r.pairs) pairs.push_back({{"gt", p.gt_id}, {"pred", p.pred_id}, {"score", p.score}});
  return {{"threshold", r.threshold},
          {"DR", r.detection_rate},
          {"RA", r.recognition_accuracy},
          {"FM", r.f_measure},
          {"M", r.matches},
          {"N1", r.gt_count},
          {"N2", r.pred_count},
          {"matches", pairs}};
}

inline Json to_json(const Icdar2017Result& r) {
  Json lines = Json::array();
  for (const auto& d : r.lines) {
    lines.push_back({{"gt", d.gt_id},
                     {"pred", d.pred_id},
                     {"iu", d.iu},
                     {"tp", d.tp},
                     {"fp", d.fp},
                     {"fn", d.fn},
                     {"precision", d.precision},
                     {"recall", d.recall},
                     {"status", line_status_name(d.status)}});
  }
  return {{"threshold", r.threshold},
          {"pixel_IU", r.pixel_iu},
          {"line_IU", r.line_iu},
          {"TP", r.tp},
          {"FP", r.fp},
          {"FN", r.fn},
          {"CL", r.correct_lines},
          {"ML", r.missed_lines},
          {"EL", r.extra_lines},
          {"lines", lines}};
}

inline Json to_json(const EvalReport& report) {
  Json j = Json::object();
  if (report.icdar2013) j["icdar2013"] = to_json(*report.icdar2013);
  if (report.icdar2017) j["icdar2017"] = to_json(*report.icdar2017);
  return j;
}

inline Json diagnostics_json(const ExtractionResult& r) {
  Json comps = Json::array();
  for (const auto& d : r.diagnostics) {
    Json c = {{"id", d.component_id},
              {"centroid", {d.centroid.x, d.centroid.y}},
              {"area", d.area}};
    if (d.split) {
      c["split"] = true;
      c["lines"] = d.split_lines;
    } else {
      c["label"] = d.label;
      c["data_cost"] = d.data_cost;
      c["smoothness"] = d.smoothness;
    }
    comps.push_back(std::move(c));
  }
  Json beta = r.beta_defined ? Json(r.beta) : Json(nullptr);
  return {{"line_count", r.line_count},
          {"empty_lines", r.empty_lines},
          {"energy", r.energy},
          {"beta", beta},
          {"lambda", r.lambda},
          {"sweeps", r.expansion.sweeps},
          {"accepted_moves", r.expansion.move_energies.size()},
          {"converged", r.expansion.converged},
          {"components", comps}};
}

inline Json tile_manifest_json(const std::vector<Tile>& tiles, int width, int height, const TileSpec& spec,
                               const std::vector<std::string>& files) {
  Json list = Json::array();
  for (std::size_t i = 0; i < tiles.size(); ++i) {
    Json t = {{"x", tiles[i].offset.x}, {"y", tiles[i].offset.y}};
    if (i < files.size()) t["file"] = files[i];
    list.push_back(std::move(t));
  }
  return {{"page", {{"width", width}, {"height", height}}},
          {"spec", {{"window", spec.window}, {"inner", spec.inner}, {"margin", spec.margin()}}},
          {"tiles", list}};
}

inline void write_json(const Json& j, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io, "cannot write " + path);
  out << j.dump(2) << '\n';
  if (!out) throw Error(ErrorCode::io, "write failed: " + path);
}

inline Json read_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse, path + ": " + e.what());
  }
}

}  // namespace textline
