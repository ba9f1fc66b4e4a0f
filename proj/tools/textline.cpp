// textline: command-line front end for the line extraction pipeline.
//
//   textline extract  --page P (--mask M | --page-xml X) --out DIR
//   textline extract  --batch-dir D --out DIR [--jobs N]
//   textline evaluate --gt G --pred R [--page P] [--suite both] [--report FILE]
//   textline synth    --out DIR [--count N] [--seed S] [--orientation horizontal]
//   textline tile     --page P --out DIR
//   textline stitch   --manifest DIR/tiles.json --out page.png
//   textline augment  --strip P --out DIR
//   textline genlabels --page-xml X --out mask.png
//
// Every flag can also be set through an environment variable named
// TEXTLINE_<FLAG> (upper case, dashes as underscores). Command-line values win.

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "textline.hpp"

namespace fs = std::filesystem;
using namespace textline;

namespace {

struct ExtractOptions {
  std::string page, mask, page_xml, batch_dir, out;
  int k = kDefaultNeighbors;
  std::optional<double> lambda;
  int connectivity = 8;
  bool split_touching = true;
  int closing_radius = kDefaultClosingRadius;
  int max_sweeps = kDefaultMaxSweeps;
  int brush_thickness = kDefaultBrushThickness;
  int min_component_area = 0;
  std::string page_polarity = "ink-dark";
  std::string mask_polarity = "ink-light";
  int jobs = 1;
};

struct EvaluateOptions {
  std::string gt, pred, page, report;
  std::string suite = "both";
  double match_threshold = kDefaultMatchThreshold;
  double iu_threshold = kDefaultIuThreshold;
  bool merge_pred_regions = false;
  std::string page_polarity = "ink-dark";
};

struct SynthOptions {
  std::string out;
  int count = 1;
  SynthSpec spec;
  std::string orientation = "horizontal";
};

struct TileOptions {
  std::string page, out, manifest;
  std::string page_polarity = "ink-dark";
};

struct AugmentOptions {
  std::string strip, out;
  std::string page_polarity = "ink-dark";
};

struct GenlabelsOptions {
  std::string page_xml, out;
  int brush_thickness = kDefaultBrushThickness;
  int width = 0, height = 0;
};

Polarity parse_polarity(const std::string& s) { return s == "ink-light" ? Polarity::ink_light : Polarity::ink_dark; }

void require(const std::string& value, const char* flag) {
  if (value.empty()) throw Error(ErrorCode::invalid_argument, std::string("missing required option ") + flag);
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::io, "cannot create directory '" + dir + "': " + ec.message());
}

std::string join(const std::string& dir, const std::string& name) { return (fs::path(dir) / name).string(); }

// FNV-1a over the file bytes, for the corpus manifest.
std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot read " + path);
  std::uint64_t h = 1469598103934665603ull;
  char buf[4096];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 1099511628211ull;
    }
  }
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
  return hex;
}

Json extract_config(const ExtractOptions& o) {
  return {{"k", o.k},
          {"lambda", o.lambda ? Json(*o.lambda) : Json("auto")},
          {"connectivity", o.connectivity},
          {"split_touching", o.split_touching},
          {"closing_radius", o.closing_radius},
          {"max_sweeps", o.max_sweeps},
          {"brush_thickness", o.brush_thickness},
          {"min_component_area", o.min_component_area},
          {"page_polarity", o.page_polarity},
          {"mask_polarity", o.mask_polarity},
          {"jobs", o.jobs}};
}

Json evaluate_config(const EvaluateOptions& o) {
  return {{"suite", o.suite},
          {"match_threshold", o.match_threshold},
          {"iu_threshold", o.iu_threshold},
          {"merge_pred_regions", o.merge_pred_regions},
          {"page_polarity", o.page_polarity}};
}

const char* orientation_name(LineOrientation o) {
  switch (o) {
    case LineOrientation::horizontal: return "horizontal";
    case LineOrientation::skewed: return "skewed";
    case LineOrientation::curved: return "curved";
  }
  return "horizontal";
}

Json synth_config(const SynthOptions& o) {
  const auto& s = o.spec;
  return {{"count", o.count},
          {"seed", s.seed},
          {"width", s.width},
          {"height", s.height},
          {"margin", s.margin},
          {"lines", s.lines},
          {"x_height", s.x_height},
          {"gap", s.gap},
          {"word_min", s.word_min},
          {"word_max", s.word_max},
          {"space_min", s.space_min},
          {"space_max", s.space_max},
          {"orientation", orientation_name(s.orientation)},
          {"skew_degrees", s.skew_degrees},
          {"curvature", s.curvature},
          {"diacritic_density", s.diacritic_density},
          {"bridge_probability", s.bridge_probability},
          {"band_thickness", s.band_thickness}};
}

Json tile_config() {
  const TileSpec spec;
  return {{"window", spec.window}, {"inner", spec.inner}, {"margin", spec.margin()}};
}

// Removes connected components smaller than min_area pixels.
BinaryPage drop_small_components(const BinaryPage& page, int min_area, Connectivity conn) {
  if (min_area <= 1) return page;
  BinaryPage out(page.width(), page.height());
  for (const auto& c : extract_components(page, conn))
    if (static_cast<int>(c.area) >= min_area) c.for_each_pixel([&](int x, int y) { out.set(x, y, true); });
  return out;
}

RgbImage overlay(const BinaryPage& page, const LabelRaster& labels) {
  RgbImage img(page.width(), page.height(), {255, 255, 255});
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!page[i]) continue;
    img[i] = labels[i] ? label_color(labels[i]) : Rgb{0, 0, 0};
  }
  return img;
}

struct PageJob {
  std::string stem, page, mask, page_xml;
};

// Runs extraction for one page and returns the manifest entry.
Json extract_page(const PageJob& job, const ExtractOptions& o, const std::string& out_dir) {
  const auto conn = o.connectivity == 4 ? Connectivity::four : Connectivity::eight;
  const auto page = drop_small_components(load_binary_page(job.page, parse_polarity(o.page_polarity)),
                                          o.min_component_area, conn);
  BinaryPage mask;
  if (!job.mask.empty()) {
    mask = load_binary_page(job.mask, parse_polarity(o.mask_polarity));
  } else {
    const auto doc = read_page_xml(job.page_xml);
    std::vector<Ring> rings;
    for (const auto& l : doc.lines) rings.push_back(l.ring);
    mask = skeleton_labels_from_polygons(rings, page.width(), page.height(), o.brush_thickness);
  }

  ExtractionParams params;
  params.k = o.k;
  params.lambda = o.lambda;
  params.connectivity = conn;
  params.split_multiline_components = o.split_touching;
  params.max_sweeps = o.max_sweeps;
  params.closing_radius = o.closing_radius;
  const auto r = extract_lines(page, mask, params);

  const std::string labels = job.stem + ".labels.png", xml = job.stem + ".xml",
                    diag = job.stem + ".diagnostics.json", over = job.stem + ".overlay.png";
  save_label_raster(r.pixel_labels, join(out_dir, labels), LabelFileMode::indexed);
  write_page_xml(join(out_dir, xml), page.width(), page.height(), fs::path(job.page).filename().string(), r.polygons);
  write_json(diagnostics_json(r), join(out_dir, diag));
  save_rgb_image(overlay(page, r.pixel_labels), join(out_dir, over));

  Json entry = {{"page", job.page}};
  entry["blob_source"] = job.mask.empty() ? Json{{"page_xml", job.page_xml}} : Json{{"mask", job.mask}};
  entry["lines"] = r.line_count;
  entry["energy"] = r.energy;
  entry["outputs"] = {labels, xml, diag, over};
  return entry;
}

std::vector<PageJob> batch_jobs(const std::string& dir) {
  std::vector<fs::path> pages;
  for (const auto& e : fs::directory_iterator(dir)) {
    const auto& p = e.path();
    const auto name = p.filename().string();
    if (p.extension() != ".png" || name.ends_with(".mask.png") || name.ends_with(".labels.png")) continue;
    pages.push_back(p);
  }
  std::sort(pages.begin(), pages.end());
  std::vector<PageJob> jobs;
  for (const auto& p : pages) {
    PageJob j;
    j.stem = p.stem().string();
    j.page = p.string();
    const auto mask = p.parent_path() / (j.stem + ".mask.png");
    const auto xml = p.parent_path() / (j.stem + ".xml");
    if (fs::exists(mask))
      j.mask = mask.string();
    else if (fs::exists(xml))
      j.page_xml = xml.string();
    else
      throw Error(ErrorCode::io, "no blob-line mask or PAGE XML for " + p.string());
    jobs.push_back(std::move(j));
  }
  if (jobs.empty()) throw Error(ErrorCode::io, "no pages found in " + dir);
  return jobs;
}

int run_extract(const ExtractOptions& o) {
  require(o.out, "--out");
  if (o.connectivity != 4 && o.connectivity != 8)
    throw Error(ErrorCode::invalid_argument, "--connectivity must be 4 or 8");
  std::vector<PageJob> jobs;
  if (!o.batch_dir.empty()) {
    if (!o.page.empty() || !o.mask.empty() || !o.page_xml.empty())
      throw Error(ErrorCode::invalid_argument, "--batch-dir excludes --page, --mask and --page-xml");
    jobs = batch_jobs(o.batch_dir);
  } else {
    require(o.page, "--page");
    if (o.mask.empty() == o.page_xml.empty())
      throw Error(ErrorCode::invalid_argument, "give exactly one of --mask or --page-xml");
    PageJob j{fs::path(o.page).stem().string(), o.page, o.mask, o.page_xml};
    jobs.push_back(j);
  }
  ensure_dir(o.out);

  std::vector<Json> entries(jobs.size());
  std::vector<std::optional<Error>> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        entries[i] = extract_page(jobs[i], o, o.out);
      } catch (const Error& e) {
        errors[i] = e;
      } catch (const std::exception& e) {
        errors[i] = Error(ErrorCode::io, e.what());
      }
    }
  };
  const auto workers = static_cast<std::size_t>(std::clamp(o.jobs, 1, 64));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < std::min(workers, jobs.size()); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  Json pages = Json::array();
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (errors[i]) {
      pages.push_back({{"page", jobs[i].page},
                       {"error", std::string(error_code_name(errors[i]->code()))},
                       {"message", errors[i]->what()}});
    } else {
      pages.push_back(entries[i]);
    }
  }
  Json manifest = {{"command", "extract"}, {"config", extract_config(o)}, {"pages", pages}};
  write_json(manifest, join(o.out, "run.json"));
  for (const auto& e : errors)
    if (e) throw *e;
  return 0;
}

bool is_page_xml(const std::string& path) { return fs::path(path).extension() == ".xml"; }

struct LoadedRegions {
  std::vector<EvalRegion> regions;
  int width = 0, height = 0;
};

LoadedRegions load_regions(const std::string& path, const BinaryPage* fg, bool merge_by_line) {
  LoadedRegions out;
  if (is_page_xml(path)) {
    const auto doc = read_page_xml(path);
    out.width = doc.width;
    out.height = doc.height;
    if (fg && (fg->width() != doc.width || fg->height() != doc.height))
      throw Error(ErrorCode::dimension_mismatch, path + " does not match the page size");
    out.regions = regions_from_polygons(doc.lines, doc.width, doc.height, fg, merge_by_line);
  } else {
    const auto labels = load_label_raster(path);
    out.width = labels.width();
    out.height = labels.height();
    if (fg && !labels.same_size(*fg)) throw Error(ErrorCode::dimension_mismatch, path + " does not match the page size");
    out.regions = regions_from_labels(labels, fg);
  }
  return out;
}

int run_evaluate(const EvaluateOptions& o) {
  require(o.gt, "--gt");
  require(o.pred, "--pred");
  if (o.suite != "icdar2013" && o.suite != "icdar2017" && o.suite != "both")
    throw Error(ErrorCode::invalid_argument, "--suite must be icdar2013, icdar2017 or both");
  std::optional<BinaryPage> fg;
  if (!o.page.empty()) fg = load_binary_page(o.page, parse_polarity(o.page_polarity));
  const auto gt = load_regions(o.gt, fg ? &*fg : nullptr, true);
  const auto pred = load_regions(o.pred, fg ? &*fg : nullptr, o.merge_pred_regions);
  if (gt.width != pred.width || gt.height != pred.height)
    throw Error(ErrorCode::dimension_mismatch, "ground truth and prediction differ in size");

  EvalReport report;
  if (o.suite != "icdar2017") report.icdar2013 = evaluate_icdar2013(gt.regions, pred.regions, o.match_threshold);
  if (o.suite != "icdar2013") report.icdar2017 = evaluate_icdar2017(gt.regions, pred.regions, o.iu_threshold);
  Json j = {{"command", "evaluate"},
            {"config", evaluate_config(o)},
            {"gt", o.gt},
            {"pred", o.pred},
            {"report", to_json(report)}};
  std::cout << j.dump(2) << '\n';
  if (!o.report.empty()) write_json(j, o.report);
  return 0;
}

int run_synth(SynthOptions o) {
  require(o.out, "--out");
  if (o.orientation == "horizontal")
    o.spec.orientation = LineOrientation::horizontal;
  else if (o.orientation == "skewed")
    o.spec.orientation = LineOrientation::skewed;
  else if (o.orientation == "curved")
    o.spec.orientation = LineOrientation::curved;
  else
    throw Error(ErrorCode::invalid_argument, "--orientation must be horizontal, skewed or curved");
  if (o.count < 1) throw Error(ErrorCode::invalid_argument, "--count must be positive");
  ensure_dir(o.out);

  Json pages = Json::array();
  for (int i = 0; i < o.count; ++i) {
    auto spec = o.spec;
    spec.seed = o.spec.seed + static_cast<std::uint64_t>(i);
    const auto s = generate_synthetic_page(spec);
    char stem[32];
    std::snprintf(stem, sizeof stem, "page_%03d", i + 1);
    const std::string page = std::string(stem) + ".png", mask = std::string(stem) + ".mask.png",
                      labels = std::string(stem) + ".gt.labels.png", xml = std::string(stem) + ".gt.xml";
    save_binary_page(s.page, join(o.out, page), Polarity::ink_dark);
    save_binary_page(s.blob_mask, join(o.out, mask), Polarity::ink_light);
    save_label_raster(s.labels, join(o.out, labels), LabelFileMode::indexed);
    write_page_xml(join(o.out, xml), s.page.width(), s.page.height(), page, s.polygons);
    Json files = Json::object();
    for (const auto& f : {page, mask, labels, xml}) files[f] = file_digest(join(o.out, f));
    pages.push_back({{"seed", spec.seed},
                     {"width", s.page.width()},
                     {"height", s.page.height()},
                     {"words", s.word_count},
                     {"diacritics", s.diacritic_count},
                     {"bridges", s.bridge_count},
                     {"files", files}});
  }
  write_json({{"command", "synth"}, {"config", synth_config(o)}, {"pages", pages}}, join(o.out, "run.json"));
  return 0;
}

int run_tile(const TileOptions& o) {
  require(o.page, "--page");
  require(o.out, "--out");
  const auto page = load_binary_page(o.page, parse_polarity(o.page_polarity));
  ensure_dir(o.out);
  const TileSpec spec;
  const auto tiles = tile_page(page, spec);
  std::vector<std::string> files;
  for (const auto& t : tiles) {
    char name[64];
    std::snprintf(name, sizeof name, "tile_r%02d_c%02d.png", t.offset.y / spec.inner, t.offset.x / spec.inner);
    save_binary_page(t.image, join(o.out, name), parse_polarity(o.page_polarity));
    files.emplace_back(name);
  }
  auto manifest = tile_manifest_json(tiles, page.width(), page.height(), spec, files);
  manifest["source"] = o.page;
  manifest["page_polarity"] = o.page_polarity;
  write_json(manifest, join(o.out, "tiles.json"));
  return 0;
}

int run_stitch(const TileOptions& o) {
  require(o.manifest, "--manifest");
  require(o.out, "--out");
  const auto j = read_json(o.manifest);
  const auto dir = fs::path(o.manifest).parent_path();
  std::vector<Tile> tiles;
  int width = 0, height = 0;
  try {
    width = j.at("page").at("width").get<int>();
    height = j.at("page").at("height").get<int>();
    for (const auto& t : j.at("tiles")) {
      const auto path = dir / t.at("file").get<std::string>();
      if (!fs::exists(path)) continue;
      tiles.push_back({load_binary_page(path, parse_polarity(o.page_polarity)),
                       {t.at("x").get<int>(), t.at("y").get<int>()}});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse, o.manifest + ": " + e.what());
  }
  save_binary_page(stitch_tiles(tiles, width, height), o.out, parse_polarity(o.page_polarity));
  return 0;
}

int run_augment(const AugmentOptions& o) {
  require(o.strip, "--strip");
  require(o.out, "--out");
  const auto strip = load_binary_page(o.strip, parse_polarity(o.page_polarity));
  const auto outputs = augment_warp(strip);
  ensure_dir(o.out);
  const char* names[] = {"warp.png", "warp_hflip.png", "warp_vflip.png", "warp_hvflip.png"};
  for (std::size_t i = 0; i < outputs.size(); ++i)
    save_binary_page(outputs[i], join(o.out, names[i]), parse_polarity(o.page_polarity));
  write_json({{"command", "augment"},
              {"strip", o.strip},
              {"radius", HingeWarp::for_strip(strip.width(), strip.height()).radius},
              {"outputs", {names[0], names[1], names[2], names[3]}}},
             join(o.out, "run.json"));
  return 0;
}

int run_genlabels(const GenlabelsOptions& o) {
  require(o.page_xml, "--page-xml");
  require(o.out, "--out");
  const auto doc = read_page_xml(o.page_xml);
  const int w = o.width > 0 ? o.width : doc.width, h = o.height > 0 ? o.height : doc.height;
  if (w <= 0 || h <= 0) throw Error(ErrorCode::invalid_argument, "page size unknown; pass --width and --height");
  std::vector<Ring> rings;
  for (const auto& l : doc.lines) rings.push_back(l.ring);
  std::vector<std::string> warnings;
  const auto mask = skeleton_labels_from_polygons(rings, w, h, o.brush_thickness, &warnings);
  for (const auto& msg : warnings) std::cerr << "warning: " << msg << '\n';
  save_binary_page(mask, o.out, Polarity::ink_light);
  return 0;
}

Json all_defaults() {
  return {{"extract", extract_config(ExtractOptions{})},
          {"evaluate", evaluate_config(EvaluateOptions{})},
          {"synth", synth_config(SynthOptions{})},
          {"tile", tile_config()},
          {"genlabels", {{"brush_thickness", kDefaultBrushThickness}}}};
}

void print_error(ErrorCode code, const std::string& message) {
  Json j = {{"error", std::string(error_code_name(code))}, {"code", static_cast<int>(code)}, {"message", message}};
  std::cerr << j.dump() << '\n';
}

// Adds an option together with its TEXTLINE_<FLAG> environment override.
template <typename T>
CLI::Option* flag(CLI::App* app, const std::string& name, T& target, const std::string& help) {
  std::string env = "TEXTLINE_";
  for (char c : name.substr(2)) env += c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return app->add_option(name, target, help)->envname(env);
}

const std::map<std::string, bool> kOnOff{{"on", true}, {"off", false}};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Text line extraction from binarized document pages"};
  app.require_subcommand(0, 1);
  app.fallthrough();
  bool print_config = false;
  app.add_flag("--print-config", print_config, "Print the effective configuration as JSON and exit");

  ExtractOptions ex;
  auto* extract = app.add_subcommand("extract", "Extract text lines guided by a blob-line mask");
  flag(extract, "--page", ex.page, "Binarized page image (PNG or PGM)");
  flag(extract, "--mask", ex.mask, "Blob-line mask PNG");
  flag(extract, "--page-xml", ex.page_xml, "PAGE XML whose line polygons give the blob lines");
  flag(extract, "--batch-dir", ex.batch_dir, "Directory of NAME.png pages with NAME.mask.png or NAME.xml");
  flag(extract, "--out", ex.out, "Output directory");
  flag(extract, "--k", ex.k, "Neighbors per component in the smoothness graph")->check(CLI::PositiveNumber);
  flag(extract, "--lambda", ex.lambda, "Smoothness weight (default: mean data-cost gap)")->check(CLI::NonNegativeNumber);
  flag(extract, "--connectivity", ex.connectivity, "Pixel connectivity, 4 or 8")->check(CLI::IsMember({4, 8}));
  flag(extract, "--split-touching", ex.split_touching, "Split components touching several blob lines")
      ->transform(CLI::CheckedTransformer(kOnOff));
  flag(extract, "--closing-radius", ex.closing_radius, "Disk radius for polygon closing")->check(CLI::NonNegativeNumber);
  flag(extract, "--max-sweeps", ex.max_sweeps, "Expansion sweep limit")->check(CLI::PositiveNumber);
  flag(extract, "--brush-thickness", ex.brush_thickness, "Blob-line thickness for --page-xml input")
      ->check(CLI::PositiveNumber);
  flag(extract, "--min-component-area", ex.min_component_area, "Drop page components smaller than this")
      ->check(CLI::NonNegativeNumber);
  flag(extract, "--page-polarity", ex.page_polarity, "ink-dark or ink-light")
      ->check(CLI::IsMember({"ink-dark", "ink-light"}));
  flag(extract, "--mask-polarity", ex.mask_polarity, "ink-dark or ink-light")
      ->check(CLI::IsMember({"ink-dark", "ink-light"}));
  flag(extract, "--jobs", ex.jobs, "Worker threads for --batch-dir")->check(CLI::Range(1, 64));

  EvaluateOptions ev;
  auto* evaluate = app.add_subcommand("evaluate", "Score a prediction against ground truth");
  flag(evaluate, "--gt", ev.gt, "Ground truth: label PNG or PAGE XML");
  flag(evaluate, "--pred", ev.pred, "Prediction: label PNG or PAGE XML");
  flag(evaluate, "--page", ev.page, "Binarized page; restricts scoring to its foreground");
  flag(evaluate, "--suite", ev.suite, "icdar2013, icdar2017 or both")
      ->check(CLI::IsMember({"icdar2013", "icdar2017", "both"}));
  flag(evaluate, "--match-threshold", ev.match_threshold, "ICDAR 2013 MatchScore acceptance")
      ->check(CLI::Range(0.0, 1.0));
  flag(evaluate, "--iu-threshold", ev.iu_threshold, "ICDAR 2017 precision/recall threshold")
      ->check(CLI::Range(0.0, 1.0));
  flag(evaluate, "--merge-pred-regions", ev.merge_pred_regions, "Merge predicted polygons sharing a line id")
      ->transform(CLI::CheckedTransformer(kOnOff));
  flag(evaluate, "--page-polarity", ev.page_polarity, "ink-dark or ink-light")
      ->check(CLI::IsMember({"ink-dark", "ink-light"}));
  flag(evaluate, "--report", ev.report, "Also write the report JSON here");

  SynthOptions sy;
  auto* synth = app.add_subcommand("synth", "Generate synthetic pages with ground truth");
  flag(synth, "--out", sy.out, "Output directory");
  flag(synth, "--count", sy.count, "Number of pages")->check(CLI::PositiveNumber);
  flag(synth, "--seed", sy.spec.seed, "Seed of the first page; page i uses seed + i");
  flag(synth, "--orientation", sy.orientation, "horizontal, skewed or curved")
      ->check(CLI::IsMember({"horizontal", "skewed", "curved"}));
  flag(synth, "--width", sy.spec.width, "Layout width");
  flag(synth, "--height", sy.spec.height, "Layout height");
  flag(synth, "--margin", sy.spec.margin, "Page margin");
  flag(synth, "--lines", sy.spec.lines, "Text lines per page");
  flag(synth, "--x-height", sy.spec.x_height, "Word body height");
  flag(synth, "--gap", sy.spec.gap, "Rows between lines");
  flag(synth, "--word-min", sy.spec.word_min, "Shortest word");
  flag(synth, "--word-max", sy.spec.word_max, "Longest word");
  flag(synth, "--space-min", sy.spec.space_min, "Narrowest word gap");
  flag(synth, "--space-max", sy.spec.space_max, "Widest word gap");
  flag(synth, "--skew-degrees", sy.spec.skew_degrees, "Rotation for skewed pages");
  flag(synth, "--curvature", sy.spec.curvature, "Sag in pixels for curved pages");
  flag(synth, "--diacritic-density", sy.spec.diacritic_density, "Expected marks per word");
  flag(synth, "--bridge-probability", sy.spec.bridge_probability, "Chance a word touches the next line");
  flag(synth, "--band-thickness", sy.spec.band_thickness, "Blob-line thickness in the mask");

  TileOptions ti;
  auto* tile = app.add_subcommand("tile", "Cut a page into 350x350 tiles with 250x250 inner windows");
  flag(tile, "--page", ti.page, "Binarized page image");
  flag(tile, "--out", ti.out, "Output directory");
  flag(tile, "--page-polarity", ti.page_polarity, "ink-dark or ink-light")
      ->check(CLI::IsMember({"ink-dark", "ink-light"}));

  TileOptions st;
  auto* stitch = app.add_subcommand("stitch", "Reassemble tiles from their inner windows");
  flag(stitch, "--manifest", st.manifest, "tiles.json written by tile");
  flag(stitch, "--out", st.out, "Output page PNG");
  flag(stitch, "--page-polarity", st.page_polarity, "ink-dark or ink-light")
      ->check(CLI::IsMember({"ink-dark", "ink-light"}));

  AugmentOptions au;
  auto* augment = app.add_subcommand("augment", "Bend a text strip into four curved variants");
  flag(augment, "--strip", au.strip, "Strip image");
  flag(augment, "--out", au.out, "Output directory");
  flag(augment, "--page-polarity", au.page_polarity, "ink-dark or ink-light")
      ->check(CLI::IsMember({"ink-dark", "ink-light"}));

  GenlabelsOptions gl;
  auto* genlabels = app.add_subcommand("genlabels", "Derive a blob-line mask from PAGE XML line polygons");
  flag(genlabels, "--page-xml", gl.page_xml, "PAGE XML input");
  flag(genlabels, "--out", gl.out, "Output mask PNG");
  flag(genlabels, "--brush-thickness", gl.brush_thickness, "Blob-line thickness")->check(CLI::PositiveNumber);
  flag(genlabels, "--width", gl.width, "Page width when the XML lacks it");
  flag(genlabels, "--height", gl.height, "Page height when the XML lacks it");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error(ErrorCode::invalid_argument, e.what());
    return static_cast<int>(ErrorCode::invalid_argument);
  }

  try {
    if (print_config) {
      Json j;
      if (*extract)
        j = extract_config(ex);
      else if (*evaluate)
        j = evaluate_config(ev);
      else if (*synth)
        j = synth_config(sy);
      else if (*tile || *stitch)
        j = tile_config();
      else if (*genlabels)
        j = {{"brush_thickness", gl.brush_thickness}};
      else
        j = all_defaults();
      std::cout << j.dump(2) << '\n';
      return 0;
    }
    if (*extract) return run_extract(ex);
    if (*evaluate) return run_evaluate(ev);
    if (*synth) return run_synth(sy);
    if (*tile) return run_tile(ti);
    if (*stitch) return run_stitch(st);
    if (*augment) return run_augment(au);
    if (*genlabels) return run_genlabels(gl);
    std::cout << app.help();
    return 0;
  } catch (const Error& e) {
    print_error(e.code(), e.what());
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    print_error(ErrorCode::io, e.what());
    return static_cast<int>(ErrorCode::io);
  }
}
