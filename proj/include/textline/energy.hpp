#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "textline/blobline.hpp"
#include "textline/components.hpp"
#include "textline/error.hpp"

namespace textline {

inline constexpr int kDefaultNeighbors = 4;

// Centroid distances below this are floored so coincident centroids still get
// a finite weight no larger than lambda.
inline constexpr double kMinEdgeDistance = 1.0;

struct NeighborEdge {
  int a = 0;  // component index (0-based), a < b
  int b = 0;
  double distance = 0.0;

  friend bool operator==(const NeighborEdge&, const NeighborEdge&) = default;
};

struct NeighborGraph {
  int node_count = 0;
  std::vector<NeighborEdge> edges;  // sorted by (a, b), no duplicates
};

// Symmetrized k-nearest-neighbor graph on centroids: {i, j} is an edge when
// either endpoint is among the other's k nearest. Ties resolve to the lower index.
inline NeighborGraph build_neighbor_graph(std::span<const Point2> centroids, int k = kDefaultNeighbors) {
  if (k < 1) throw Error(ErrorCode::invalid_argument, "neighbor count k must be >= 1");
  NeighborGraph g;
  g.node_count = static_cast<int>(centroids.size());
  const int n = g.node_count;
  std::vector<std::pair<int, int>> pairs;
  std::vector<std::pair<double, int>> cand;
  for (int i = 0; i < n; ++i) {
    cand.clear();
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double dx = centroids[static_cast<std::size_t>(i)].x - centroids[static_cast<std::size_t>(j)].x;
      const double dy = centroids[static_cast<std::size_t>(i)].y - centroids[static_cast<std::size_t>(j)].y;
      cand.emplace_back(dx * dx + dy * dy, j);
    }
    const auto take = std::min<std::size_t>(static_cast<std::size_t>(k), cand.size());
    std::partial_sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(take), cand.end());
    for (std::size_t t = 0; t < take; ++t) {
      const int j = cand[t].second;
      pairs.emplace_back(std::min(i, j), std::max(i, j));
    }
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  g.edges.reserve(pairs.size());
  for (const auto& [a, b] : pairs) {
    const auto& p = centroids[static_cast<std::size_t>(a)];
    const auto& q = centroids[static_cast<std::size_t>(b)];
    const double d = std::hypot(p.x - q.x, p.y - q.y);
    g.edges.push_back({a, b, std::max(d, kMinEdgeDistance)});
  }
  return g;
}

inline NeighborGraph build_neighbor_graph(const std::vector<Component>& components, int k = kDefaultNeighbors) {
  std::vector<Point2> centroids;
  centroids.reserve(components.size());
  for (const auto& c : components) centroids.push_back(c.centroid);
  return build_neighbor_graph(centroids, k);
}

// beta = 1 / (2 <d_e>), the mean taken over all neighbor pairs.
inline double compute_beta(const NeighborGraph& g) {
  if (g.edges.empty()) throw Error(ErrorCode::beta_undefined, "beta undefined: neighbor graph has no edges");
  double sum = 0.0;
  for (const auto& e : g.edges) sum += e.distance;
  const double mean = sum / static_cast<double>(g.edges.size());
  return 1.0 / (2.0 * mean);
}

inline double smoothness_cost(double beta, double distance) { return std::exp(-beta * distance); }

struct WeightedEdge {
  int a = 0;
  int b = 0;
  double weight = 0.0;
  double distance = 0.0;  // centroid distance, kept for diagnostics
};

// Potts energy over components (rows) and blob-line labels 1..label_count.
class EnergyModel {
 public:
  EnergyModel() = default;

  // data is row-major: data[e * label_count + (label - 1)].
  EnergyModel(int component_count, int label_count, std::vector<double> data, std::vector<WeightedEdge> edges)
      : components_(component_count), labels_(label_count), data_(std::move(data)), edges_(std::move(edges)) {
    if (component_count < 0 || label_count < 1)
      throw Error(ErrorCode::invalid_argument, "energy model needs at least one label");
    if (data_.size() != static_cast<std::size_t>(component_count) * static_cast<std::size_t>(label_count))
      throw Error(ErrorCode::invalid_argument, "data cost matrix has the wrong size");
    for (double d : data_)
      if (!(d >= 0.0) || !std::isfinite(d)) throw Error(ErrorCode::invalid_argument, "data costs must be finite and >= 0");
    for (const auto& e : edges_) {
      if (e.a < 0 || e.b < 0 || e.a >= component_count || e.b >= component_count || e.a == e.b)
        throw Error(ErrorCode::invalid_argument, "edge endpoint out of range");
      if (!(e.weight >= 0.0)) throw Error(ErrorCode::invalid_argument, "edge weights must be >= 0");
    }
    incident_.assign(static_cast<std::size_t>(component_count), {});
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      incident_[static_cast<std::size_t>(edges_[i].a)].push_back(i);
      incident_[static_cast<std::size_t>(edges_[i].b)].push_back(i);
    }
  }

  int component_count() const noexcept { return components_; }
  int label_count() const noexcept { return labels_; }
  const std::vector<WeightedEdge>& edges() const noexcept { return edges_; }
  const std::vector<std::size_t>& incident(int e) const { return incident_[static_cast<std::size_t>(e)]; }

  double data(int e, int label) const {
    return data_[static_cast<std::size_t>(e) * static_cast<std::size_t>(labels_) + static_cast<std::size_t>(label - 1)];
  }

  double beta = 0.0;
  bool beta_defined = false;
  double lambda = 0.0;

 private:
  int components_ = 0;
  int labels_ = 0;
  std::vector<double> data_;
  std::vector<WeightedEdge> edges_;
  std::vector<std::vector<std::size_t>> incident_;
};

// Total assignment of components to labels 1..L and the energy it attains.
struct Labeling {
  std::vector<int> labels;
  double energy = 0.0;

  friend bool operator==(const Labeling&, const Labeling&) = default;
};

inline void check_labeling(const EnergyModel& m, const std::vector<int>& labels) {
  if (labels.size() != static_cast<std::size_t>(m.component_count()))
    throw Error(ErrorCode::incomplete_labeling, "labeling does not cover every component");
  for (int l : labels)
    if (l < 1 || l > m.label_count()) throw Error(ErrorCode::incomplete_labeling, "labeling uses an invalid label");
}

inline double total_energy(const EnergyModel& m, const std::vector<int>& labels) {
  check_labeling(m, labels);
  double data = 0.0;
  for (int e = 0; e < m.component_count(); ++e) data += m.data(e, labels[static_cast<std::size_t>(e)]);
  double smooth = 0.0;
  for (const auto& edge : m.edges())
    if (labels[static_cast<std::size_t>(edge.a)] != labels[static_cast<std::size_t>(edge.b)]) smooth += edge.weight;
  return data + smooth;
}

inline double total_energy(const EnergyModel& m, const Labeling& f) { return total_energy(m, f.labels); }

// Mean gap between each component's best and second-best data cost; zero
// when there is a single label.
inline double default_lambda(int component_count, int label_count, std::span<const double> data) {
  if (label_count < 2 || component_count == 0) return 0.0;
  double sum = 0.0;
  for (int e = 0; e < component_count; ++e) {
    double best = std::numeric_limits<double>::infinity(), second = best;
    for (int l = 0; l < label_count; ++l) {
      const double d = data[static_cast<std::size_t>(e) * static_cast<std::size_t>(label_count) + static_cast<std::size_t>(l)];
      if (d < best) {
        second = best;
        best = d;
      } else if (d < second) {
        second = d;
      }
    }
    sum += second - best;
  }
  return sum / static_cast<double>(component_count);
}

// Data costs from blob-line distances at rounded centroids; smoothness weight
// lambda * exp(-beta d_e) per neighbor edge. Without edges beta is undefined
// and the model reduces to its data term. lambda defaults to default_lambda().
inline EnergyModel build_energy_model(std::span<const Point2> centroids, const BlobLineSet& blobs,
                                      const NeighborGraph& graph, std::optional<double> lambda = std::nullopt) {
  const int n = static_cast<int>(centroids.size());
  const int labels = blobs.count();
  if (graph.node_count != n) throw Error(ErrorCode::invalid_argument, "neighbor graph does not match the components");
  std::vector<double> data(static_cast<std::size_t>(n) * static_cast<std::size_t>(labels));
  for (int e = 0; e < n; ++e)
    for (int l = 1; l <= labels; ++l)
      data[static_cast<std::size_t>(e) * static_cast<std::size_t>(labels) + static_cast<std::size_t>(l - 1)] =
          blobs.nearest_distance(l, centroids[static_cast<std::size_t>(e)]);

  const double lam = lambda.value_or(default_lambda(n, labels, data));
  if (!(lam >= 0.0)) throw Error(ErrorCode::invalid_argument, "lambda must be >= 0");
  std::vector<WeightedEdge> edges;
  double beta = 0.0;
  const bool has_beta = !graph.edges.empty();
  if (has_beta) {
    beta = compute_beta(graph);
    edges.reserve(graph.edges.size());
    for (const auto& e : graph.edges) edges.push_back({e.a, e.b, lam * smoothness_cost(beta, e.distance), e.distance});
  }
  EnergyModel model(n, labels, std::move(data), std::move(edges));
  model.beta = beta;
  model.beta_defined = has_beta;
  model.lambda = lam;
  return model;
}

inline EnergyModel build_energy_model(const std::vector<Component>& components, const BlobLineSet& blobs,
                                      const NeighborGraph& graph, std::optional<double> lambda = std::nullopt) {
  std::vector<Point2> centroids;
  centroids.reserve(components.size());
  for (const auto& c : components) centroids.push_back(c.centroid);
  return build_energy_model(centroids, blobs, graph, lambda);
}

// Plain-text dump of beta, lambda, the data matrix and the weighted edges.
inline void dump_energy_model(const EnergyModel& m, std::ostream& out) {
  out << std::setprecision(17);
  out << "beta ";
  if (m.beta_defined)
    out << m.beta << '\n';
  else
    out << "undefined\n";
  out << "lambda " << m.lambda << '\n';
  out << "components " << m.component_count() << " labels " << m.label_count() << '\n';
  out << "data\n";
  for (int e = 0; e < m.component_count(); ++e) {
    out << e;
    for (int l = 1; l <= m.label_count(); ++l) out << ' ' << m.data(e, l);
    out << '\n';
  }
  out << "edges " << m.edges().size() << '\n';
  for (const auto& edge : m.edges()) out << edge.a << ' ' << edge.b << ' ' << edge.distance << ' ' << edge.weight << '\n';
}

}  // namespace textline
