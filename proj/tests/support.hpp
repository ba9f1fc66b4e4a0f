#pragma once

// Generators and brute-force oracles shared by the unit and acceptance suites.
// None of these call into the code under test except to build inputs.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "textline.hpp"

namespace testkit {

using namespace textline;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int range(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return real(0.0, 1.0) < p; }

  BinaryPage page(int w, int h, double density) {
    BinaryPage p(w, h);
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) p.set(x, y, coin(density));
    return p;
  }

  std::vector<Point2> points(int n, double extent) {
    std::vector<Point2> pts;
    for (int i = 0; i < n; ++i) pts.push_back({real(0.0, extent), real(0.0, extent)});
    return pts;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("textline_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

// Squared distance from (x, y) to the nearest pixel of `sites`, by scanning all pixels.
template <typename IsSite>
std::int64_t brute_sq_distance(int w, int h, IsSite&& is_site, int x, int y) {
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (int sy = 0; sy < h; ++sy)
    for (int sx = 0; sx < w; ++sx)
      if (is_site(sx, sy)) {
        const std::int64_t dx = sx - x, dy = sy - y;
        best = std::min(best, dx * dx + dy * dy);
      }
  return best;
}

// Symmetrized k-NN edge set on points, ties by index, as sorted (a, b) pairs.
inline std::vector<std::pair<int, int>> brute_knn_edges(const std::vector<Point2>& pts, int k) {
  const int n = static_cast<int>(pts.size());
  std::vector<std::vector<bool>> adj(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i) {
    std::vector<std::pair<double, int>> d;
    for (int j = 0; j < n; ++j)
      if (j != i) d.push_back({std::hypot(pts[i].x - pts[j].x, pts[i].y - pts[j].y), j});
    std::sort(d.begin(), d.end());
    for (int t = 0; t < std::min(k, static_cast<int>(d.size())); ++t) {
      const int j = d[static_cast<std::size_t>(t)].second;
      adj[static_cast<std::size_t>(std::min(i, j))][static_cast<std::size_t>(std::max(i, j))] = true;
    }
  }
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (adj[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]) out.push_back({a, b});
  return out;
}

// Energy by direct re-summation over the raw data matrix and edge list.
inline double oracle_energy(const std::vector<std::vector<double>>& data,
                            const std::vector<WeightedEdge>& edges, const std::vector<int>& labels) {
  long double sum = 0.0L;
  for (std::size_t e = 0; e < labels.size(); ++e) sum += data[e][static_cast<std::size_t>(labels[e] - 1)];
  for (const auto& ed : edges)
    if (labels[static_cast<std::size_t>(ed.a)] != labels[static_cast<std::size_t>(ed.b)]) sum += ed.weight;
  return static_cast<double>(sum);
}

inline std::vector<std::vector<double>> data_matrix(const EnergyModel& m) {
  std::vector<std::vector<double>> d(static_cast<std::size_t>(m.component_count()));
  for (int e = 0; e < m.component_count(); ++e)
    for (int l = 1; l <= m.label_count(); ++l) d[static_cast<std::size_t>(e)].push_back(m.data(e, l));
  return d;
}

struct BruteMinimum {
  double energy = std::numeric_limits<double>::infinity();
  std::vector<int> labels;
};

// Exhaustive minimum over all label_count^component_count labelings.
inline BruteMinimum brute_minimum(const EnergyModel& m) {
  const auto data = data_matrix(m);
  const int n = m.component_count(), L = m.label_count();
  std::vector<int> labels(static_cast<std::size_t>(n), 1);
  BruteMinimum best;
  while (true) {
    const double e = oracle_energy(data, m.edges(), labels);
    if (e < best.energy) {
      best.energy = e;
      best.labels = labels;
    }
    int i = 0;
    while (i < n && labels[static_cast<std::size_t>(i)] == L) labels[static_cast<std::size_t>(i++)] = 1;
    if (i == n) break;
    ++labels[static_cast<std::size_t>(i)];
  }
  return best;
}

// A small geometric instance: random centroids and random short bars as blob
// lines on a 64x64 page, assembled through the public energy builders.
struct RandomInstance {
  std::vector<Point2> centroids;
  BinaryPage mask{64, 64};
  EnergyModel model;
};

inline RandomInstance random_instance(Gen& g, int max_components = 8, int max_labels = 3) {
  RandomInstance inst;
  const int labels = g.range(1, max_labels);
  for (int l = 0; l < labels; ++l) {
    // Bars on distinct rows, separated so 8-connectivity keeps them apart.
    const int y = 6 + l * 20 + g.range(0, 6);
    const int x0 = g.range(0, 30), x1 = g.range(x0 + 4, 63);
    for (int x = x0; x <= x1; ++x) inst.mask.set(x, y, true);
  }
  const int n = g.range(1, max_components);
  for (int i = 0; i < n; ++i) inst.centroids.push_back({g.real(0.0, 63.0), g.real(0.0, 63.0)});
  const auto blobs = BlobLineSet::build(inst.mask);
  const auto graph = build_neighbor_graph(inst.centroids, g.range(1, 4));
  inst.model = build_energy_model(inst.centroids, blobs, graph, std::nullopt);
  return inst;
}

// Two blob lines (bars at rows 100 and 140) and three components: word A and
// word C on the upper line, and a dot B between them that is 22 px from the
// upper line but only 18 px from the lower one.
struct DiacriticFixture {
  BinaryPage page{240, 200};
  BinaryPage mask{240, 200};
  std::vector<Point2> centroids;
};

inline DiacriticFixture diacritic_fixture() {
  DiacriticFixture f;
  for (int x = 20; x <= 220; ++x) {
    f.mask.set(x, 100, true);
    f.mask.set(x, 140, true);
  }
  auto square = [&](int cx, int cy, int r) {
    for (int y = cy - r; y <= cy + r; ++y)
      for (int x = cx - r; x <= cx + r; ++x) f.page.set(x, y, true);
    f.centroids.push_back({static_cast<double>(cx), static_cast<double>(cy)});
  };
  square(60, 100, 2);
  square(90, 122, 1);
  square(120, 100, 2);
  return f;
}

// Flow network over up to ~10 nodes; minimum cut by enumerating every
// source/sink partition.
inline double brute_min_cut(int n, int s, int t, const std::vector<std::tuple<int, int, double>>& arcs) {
  double best = std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (!(mask >> s & 1u) || (mask >> t & 1u)) continue;
    double cut = 0.0;
    for (const auto& [u, v, c] : arcs)
      if ((mask >> u & 1u) && !(mask >> v & 1u)) cut += c;
    best = std::min(best, cut);
  }
  return best;
}

inline double line_iu(const LabelRaster& gt, const LabelRaster& pred, double* pixel_iu = nullptr) {
  const auto r = evaluate_icdar2017(regions_from_labels(gt, nullptr), regions_from_labels(pred, nullptr));
  if (pixel_iu) *pixel_iu = r.pixel_iu;
  return r.line_iu;
}

}  // namespace testkit
