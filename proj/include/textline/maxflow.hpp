#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <queue>
#include <vector>

#include "textline/error.hpp"

namespace textline {

enum class CutSide { source, sink };

// s-t flow network with real capacities. Nodes are 0..n-1; source and sink
// are ordinary nodes picked at construction. Every arc is stored together with
// its reverse so residual capacities can be updated in place.
class FlowNetwork {
 public:
  struct Arc {
    int to = 0;
    double capacity = 0.0;  // residual capacity
    std::size_t reverse = 0;
    double initial = 0.0;  // capacity before any flow was pushed

    double flow() const noexcept { return initial - capacity; }
  };

  FlowNetwork(int node_count, int source, int sink) : adj_(static_cast<std::size_t>(node_count)), source_(source), sink_(sink) {
    if (node_count < 2 || source == sink || source < 0 || sink < 0 || source >= node_count || sink >= node_count)
      throw Error(ErrorCode::invalid_argument, "flow network needs distinct source and sink nodes");
  }

  int node_count() const noexcept { return static_cast<int>(adj_.size()); }
  int source() const noexcept { return source_; }
  int sink() const noexcept { return sink_; }

  // Adds u->v with `capacity` and v->u with `reverse_capacity`.
  void add_arc(int u, int v, double capacity, double reverse_capacity = 0.0) {
    if (u < 0 || v < 0 || u >= node_count() || v >= node_count())
      throw Error(ErrorCode::invalid_argument, "arc endpoint out of range");
    if (!(capacity >= 0.0) || !(reverse_capacity >= 0.0))
      throw Error(ErrorCode::invalid_argument, "capacities must be non-negative");
    if (u == v) return;
    auto& au = adj_[static_cast<std::size_t>(u)];
    auto& av = adj_[static_cast<std::size_t>(v)];
    au.push_back({v, capacity, av.size(), capacity});
    av.push_back({u, reverse_capacity, au.size() - 1, reverse_capacity});
    max_capacity_ = std::max({max_capacity_, capacity, reverse_capacity});
  }

  const std::vector<Arc>& arcs(int u) const { return adj_[static_cast<std::size_t>(u)]; }

  struct Result {
    double flow = 0.0;
    std::vector<CutSide> side;
  };

  // Dinic's blocking-flow algorithm. Consumes the residual capacities; the
  // returned partition is the set reachable from the source in the final
  // residual network, which is a minimum cut.
  Result max_flow() {
    const double eps = 1e-12 * std::max(1.0, max_capacity_);
    Result result;
    std::vector<int> level(adj_.size());
    std::vector<std::size_t> next(adj_.size());
    while (bfs_levels(level, eps)) {
      std::fill(next.begin(), next.end(), 0);
      while (true) {
        const double pushed = augment(source_, std::numeric_limits<double>::infinity(), level, next, eps);
        if (pushed <= 0.0) break;
        result.flow += pushed;
      }
    }
    result.side.assign(adj_.size(), CutSide::sink);
    std::queue<int> queue;
    queue.push(source_);
    result.side[static_cast<std::size_t>(source_)] = CutSide::source;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop();
      for (const auto& a : adj_[static_cast<std::size_t>(u)]) {
        if (a.capacity > eps && result.side[static_cast<std::size_t>(a.to)] == CutSide::sink) {
          result.side[static_cast<std::size_t>(a.to)] = CutSide::source;
          queue.push(a.to);
        }
      }
    }
    return result;
  }

 private:
  bool bfs_levels(std::vector<int>& level, double eps) const {
    std::fill(level.begin(), level.end(), -1);
    std::queue<int> queue;
    level[static_cast<std::size_t>(source_)] = 0;
    queue.push(source_);
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop();
      for (const auto& a : adj_[static_cast<std::size_t>(u)]) {
        if (a.capacity > eps && level[static_cast<std::size_t>(a.to)] < 0) {
          level[static_cast<std::size_t>(a.to)] = level[static_cast<std::size_t>(u)] + 1;
          queue.push(a.to);
        }
      }
    }
    return level[static_cast<std::size_t>(sink_)] >= 0;
  }

  double augment(int u, double limit, const std::vector<int>& level, std::vector<std::size_t>& next, double eps) {
    if (u == sink_) return limit;
    auto& arcs_u = adj_[static_cast<std::size_t>(u)];
    for (auto& i = next[static_cast<std::size_t>(u)]; i < arcs_u.size(); ++i) {
      Arc& a = arcs_u[i];
      if (a.capacity <= eps || level[static_cast<std::size_t>(a.to)] != level[static_cast<std::size_t>(u)] + 1) continue;
      const double pushed = augment(a.to, std::min(limit, a.capacity), level, next, eps);
      if (pushed > 0.0) {
        a.capacity -= pushed;
        adj_[static_cast<std::size_t>(a.to)][a.reverse].capacity += pushed;
        return pushed;
      }
    }
    return 0.0;
  }

  std::vector<std::vector<Arc>> adj_;
  int source_;
  int sink_;
  double max_capacity_ = 0.0;
};

}  // namespace textline
