#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "textline/energy.hpp"
#include "textline/maxflow.hpp"

namespace textline {

inline constexpr int kDefaultMaxSweeps = 10;

// Per-component data-cost argmin, ties toward the lower label id.
inline Labeling nearest_label_labeling(const EnergyModel& m) {
  Labeling f;
  f.labels.resize(static_cast<std::size_t>(m.component_count()));
  for (int e = 0; e < m.component_count(); ++e) {
    int best = 1;
    for (int l = 2; l <= m.label_count(); ++l)
      if (m.data(e, l) < m.data(e, best)) best = l;
    f.labels[static_cast<std::size_t>(e)] = best;
  }
  f.energy = total_energy(m, f);
  return f;
}

namespace detail {

// Splits a unary term so both terminal capacities stay non-negative.
struct UnaryAccumulator {
  std::vector<double> keep;    // cost when the node keeps its label (source side)
  std::vector<double> switch_;  // cost when the node switches to alpha (sink side)

  void add_switch(std::size_t p, double c) {
    if (c >= 0.0)
      switch_[p] += c;
    else
      keep[p] -= c;
  }
};

}  // namespace detail

// Optimal alpha-expansion move from `labels`: every component either keeps
// its label or switches to alpha, whichever subset minimizes the energy. The
// Potts term is a metric, so the binary move energy is submodular and one
// minimum cut solves it exactly.
inline std::vector<int> expansion_move(const EnergyModel& m, const std::vector<int>& labels, int alpha) {
  const int n = m.component_count();
  std::vector<int> node_of(static_cast<std::size_t>(n), -1);
  int active = 0;
  for (int e = 0; e < n; ++e)
    if (labels[static_cast<std::size_t>(e)] != alpha) node_of[static_cast<std::size_t>(e)] = active++;
  if (active == 0) return labels;

  detail::UnaryAccumulator unary{std::vector<double>(static_cast<std::size_t>(active), 0.0),
                                 std::vector<double>(static_cast<std::size_t>(active), 0.0)};
  struct PairArc {
    int p, q;
    double capacity;
  };
  std::vector<PairArc> pair_arcs;

  for (int e = 0; e < n; ++e) {
    const int p = node_of[static_cast<std::size_t>(e)];
    if (p < 0) continue;
    unary.keep[static_cast<std::size_t>(p)] += m.data(e, labels[static_cast<std::size_t>(e)]);
    unary.switch_[static_cast<std::size_t>(p)] += m.data(e, alpha);
  }
  for (const auto& edge : m.edges()) {
    const int p = node_of[static_cast<std::size_t>(edge.a)];
    const int q = node_of[static_cast<std::size_t>(edge.b)];
    const int lp = labels[static_cast<std::size_t>(edge.a)];
    const int lq = labels[static_cast<std::size_t>(edge.b)];
    const double w = edge.weight;
    if (p < 0 && q < 0) continue;  // both already alpha: constant
    if (p < 0 || q < 0) {
      // One endpoint is fixed at alpha; the other pays w unless it joins alpha.
      const int free_node = p < 0 ? q : p;
      unary.keep[static_cast<std::size_t>(free_node)] += w;
      continue;
    }
    // x = 0 keeps the current label, x = 1 takes alpha.
    const double e00 = lp != lq ? w : 0.0;
    const double e01 = w;  // lp != alpha always for active nodes
    const double e10 = w;
    const double e11 = 0.0;
    // E = e00 + (e10 - e00) x_p + (e11 - e10) x_q + (e01 + e10 - e00 - e11) (1 - x_p) x_q
    unary.add_switch(static_cast<std::size_t>(p), e10 - e00);
    unary.add_switch(static_cast<std::size_t>(q), e11 - e10);
    const double c = e01 + e10 - e00 - e11;
    if (c > 0.0) pair_arcs.push_back({p, q, c});
  }

  const int source = active, sink = active + 1;
  FlowNetwork net(active + 2, source, sink);
  for (int p = 0; p < active; ++p) {
    const double keep = unary.keep[static_cast<std::size_t>(p)];
    const double sw = unary.switch_[static_cast<std::size_t>(p)];
    const double lo = std::min(keep, sw);
    // Source side = keep: cutting s->p (p on sink side) pays the switch cost.
    if (sw - lo > 0.0) net.add_arc(source, p, sw - lo);
    if (keep - lo > 0.0) net.add_arc(p, sink, keep - lo);
  }
  for (const auto& a : pair_arcs) net.add_arc(a.p, a.q, a.capacity);

  const auto cut = net.max_flow();
  std::vector<int> out = labels;
  for (int e = 0; e < n; ++e) {
    const int p = node_of[static_cast<std::size_t>(e)];
    if (p >= 0 && cut.side[static_cast<std::size_t>(p)] == CutSide::sink) out[static_cast<std::size_t>(e)] = alpha;
  }
  return out;
}

struct ExpansionStats {
  std::vector<double> move_energies;  // energy after each accepted move, in order
  int sweeps = 0;
  int accepted_in_final_sweep = 0;
  bool converged = false;
};

// Relative slack below which an expansion is not counted as an improvement,
// so floating-point noise cannot make the sweep loop cycle.
inline constexpr double kImprovementTolerance = 1e-12;

// Alpha-expansion sweeps in ascending label order. A move is accepted only if
// it strictly lowers the energy; iteration stops after a sweep without any
// accepted move or after max_sweeps sweeps.
inline Labeling alpha_expansion(const EnergyModel& m, const Labeling& initial, int max_sweeps = kDefaultMaxSweeps,
                                ExpansionStats* stats = nullptr) {
  check_labeling(m, initial.labels);
  Labeling current{initial.labels, total_energy(m, initial.labels)};
  ExpansionStats local;
  ExpansionStats& st = stats ? *stats : local;
  st = ExpansionStats{};
  if (m.label_count() == 1) {
    st.converged = true;
    return current;
  }
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    int accepted = 0;
    for (int alpha = 1; alpha <= m.label_count(); ++alpha) {
      auto proposal = expansion_move(m, current.labels, alpha);
      const double energy = total_energy(m, proposal);
      const double slack = kImprovementTolerance * std::max(1.0, std::abs(current.energy));
      if (energy < current.energy - slack) {
        current.labels = std::move(proposal);
        current.energy = energy;
        st.move_energies.push_back(energy);
        ++accepted;
      }
    }
    st.sweeps = sweep + 1;
    st.accepted_in_final_sweep = accepted;
    if (accepted == 0) {
      st.converged = true;
      break;
    }
  }
  return current;
}

}  // namespace textline
