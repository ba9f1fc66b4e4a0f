#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "textline/alpha_expansion.hpp"
#include "textline/blobline.hpp"
#include "textline/components.hpp"
#include "textline/energy.hpp"
#include "textline/error.hpp"
#include "textline/polygons.hpp"
#include "textline/raster.hpp"

namespace textline {

struct ExtractionParams {
  int k = kDefaultNeighbors;
  std::optional<double> lambda;  // empty: mean best/second-best data-cost gap
  Connectivity connectivity = Connectivity::eight;
  bool split_multiline_components = true;
  int max_sweeps = kDefaultMaxSweeps;
  int closing_radius = kDefaultClosingRadius;
};

struct ComponentDiagnostic {
  int component_id = 0;
  Point2 centroid;
  std::size_t area = 0;
  int label = 0;                 // 0 when the component was split per pixel
  bool split = false;
  std::vector<int> split_lines;  // lines the component touches, when split
  double data_cost = 0.0;
  double smoothness = 0.0;       // weights of incident edges whose labels differ
};

struct ExtractionResult {
  LabelRaster pixel_labels;
  std::vector<std::vector<Ring>> polygons;  // index i holds line id i + 1
  int line_count = 0;
  std::vector<int> empty_lines;
  std::vector<ComponentDiagnostic> diagnostics;
  double energy = 0.0;
  double beta = 0.0;
  bool beta_defined = false;
  double lambda = 0.0;
  ExpansionStats expansion;
};

// Blob lines whose pixels the component overlaps, ascending.
inline std::vector<int> intersecting_lines(const Component& c, const BlobLineSet& blobs) {
  std::set<int> lines;
  c.for_each_pixel([&](int x, int y) {
    const auto id = blobs.labels()(x, y);
    if (id) lines.insert(static_cast<int>(id));
  });
  return {lines.begin(), lines.end()};
}

// Assigns each pixel of `c` (in Component::for_each_pixel order) to the
// nearest of the given lines, ties toward the lower id.
inline std::vector<int> split_multiline_component(const Component& c, const BlobLineSet& blobs,
                                                  const std::vector<int>& intersecting) {
  std::vector<int> out;
  out.reserve(c.area);
  if (intersecting.empty()) throw Error(ErrorCode::invalid_argument, "split needs at least one line");
  std::vector<int> lines = intersecting;
  std::sort(lines.begin(), lines.end());
  c.for_each_pixel([&](int x, int y) {
    int best = lines.front();
    std::uint32_t best_d = blobs.squared_distance(best, x, y);
    for (std::size_t i = 1; i < lines.size(); ++i) {
      const auto d = blobs.squared_distance(lines[i], x, y);
      if (d < best_d) {
        best_d = d;
        best = lines[i];
      }
    }
    out.push_back(best);
  });
  return out;
}

// Page + blob-line mask -> per-pixel text line labels and bounding polygons.
// Blob-line pixels only guide the labeling; they are never painted.
inline ExtractionResult extract_lines(const BinaryPage& page, const BinaryPage& blob_mask,
                                      const ExtractionParams& params = {}) {
  if (!page.same_size(blob_mask))
    throw Error(ErrorCode::dimension_mismatch, "page is " + std::to_string(page.width()) + "x" +
                                                   std::to_string(page.height()) + " but blob mask is " +
                                                   std::to_string(blob_mask.width()) + "x" +
                                                   std::to_string(blob_mask.height()));
  const auto blobs = BlobLineSet::build(blob_mask);
  const auto comps = extract_components(page, params.connectivity);

  ExtractionResult result;
  result.line_count = blobs.count();
  result.pixel_labels = LabelRaster(page.width(), page.height());
  result.diagnostics.resize(comps.size());

  std::vector<std::size_t> em_index;  // components labeled by energy minimization
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const auto& c = comps[i];
    auto& diag = result.diagnostics[i];
    diag.component_id = c.id;
    diag.centroid = c.centroid;
    diag.area = c.area;
    if (params.split_multiline_components) {
      const auto lines = intersecting_lines(c, blobs);
      if (lines.size() >= 2) {
        const auto pixel_lines = split_multiline_component(c, blobs, lines);
        std::size_t k = 0;
        c.for_each_pixel([&](int x, int y) { result.pixel_labels(x, y) = static_cast<std::uint32_t>(pixel_lines[k++]); });
        diag.split = true;
        diag.split_lines = lines;
        continue;
      }
    }
    em_index.push_back(i);
  }

  std::vector<Point2> centroids;
  centroids.reserve(em_index.size());
  for (auto i : em_index) centroids.push_back(comps[i].centroid);
  const auto graph = build_neighbor_graph(centroids, params.k);
  const auto model = build_energy_model(centroids, blobs, graph, params.lambda);
  const auto labeling =
      alpha_expansion(model, nearest_label_labeling(model), params.max_sweeps, &result.expansion);
  result.energy = labeling.energy;
  result.beta = model.beta;
  result.beta_defined = model.beta_defined;
  result.lambda = model.lambda;

  for (std::size_t n = 0; n < em_index.size(); ++n) {
    const auto& c = comps[em_index[n]];
    const int label = labeling.labels[n];
    auto& diag = result.diagnostics[em_index[n]];
    diag.label = label;
    diag.data_cost = model.data(static_cast<int>(n), label);
    for (auto ei : model.incident(static_cast<int>(n))) {
      const auto& e = model.edges()[ei];
      if (labeling.labels[static_cast<std::size_t>(e.a)] != labeling.labels[static_cast<std::size_t>(e.b)])
        diag.smoothness += e.weight;
    }
    c.for_each_pixel([&](int x, int y) { result.pixel_labels(x, y) = static_cast<std::uint32_t>(label); });
  }

  result.polygons = polygons_from_labels(result.pixel_labels, params.closing_radius);
  result.polygons.resize(static_cast<std::size_t>(result.line_count));
  for (int id = 1; id <= result.line_count; ++id)
    if (result.polygons[static_cast<std::size_t>(id - 1)].empty()) result.empty_lines.push_back(id);
  return result;
}

}  // namespace textline
