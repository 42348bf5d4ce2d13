#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "flowpred/network.hpp"
#include "flowpred/residual.hpp"
#include "flowpred/scores.hpp"

namespace flowpred {

enum class PathStrategy {
  kDfs,          // plain Ford-Fulkerson, arcs tried in ascending edge id
  kBfs,          // Edmonds-Karp
  kAdjustedBfs,  // shortest paths, ties broken by maximum bottleneck
  kGuided,       // score-heap pivots with bidirectional path assembly
};

std::string_view to_string(PathStrategy strategy);
/// Accepts dfs, bfs, adjusted_bfs, guided. Throws ContractError otherwise.
PathStrategy parse_strategy(std::string_view name);

struct SolveStats {
  std::int64_t augmentations = 0;
  std::int64_t residual_arc_scans = 0;
  /// Warm-start projection iterations; zero for cold starts.
  std::int64_t repairs = 0;
  /// Guided solves only: augmentations taken by the Edmonds-Karp fallback.
  std::int64_t fallback_augmentations = 0;
  Capacity total_flow = 0;
  std::chrono::microseconds wall_time{0};
};

/// An s-t augmenting path. When assembled around a pivot edge the arc at
/// `pivot_position` is the pivot; arcs before it form the source segment and
/// arcs after it the sink segment.
struct AugmentingPath {
  std::vector<ResidualArc> arcs;
  Capacity bottleneck = 0;
  std::optional<std::size_t> pivot_position;

  std::optional<EdgeId> pivot() const {
    if (!pivot_position) return std::nullopt;
    return arcs[*pivot_position].edge;
  }
};

/// Invoked before each augmentation with the path and the flow it will be
/// applied to.
using AugmentObserver = std::function<void(const AugmentingPath&, const Flow& before)>;

struct SolveOptions {
  PathStrategy strategy = PathStrategy::kBfs;
  /// Required by kGuided, ignored otherwise. Must outlive the call.
  const EdgeScores* scores = nullptr;
  AugmentObserver on_augment;
};

struct SolveResult {
  Flow flow;
  SolveStats stats;
};

/// Augments `initial` to a maximum flow. The initial flow must be feasible;
/// an infeasible one is rejected with ContractError before any work.
SolveResult ford_fulkerson(const FlowNetwork& net, const Flow& initial, const SolveOptions& options);

inline SolveResult ford_fulkerson(const FlowNetwork& net, const Flow& initial,
                                  PathStrategy strategy) {
  return ford_fulkerson(net, initial, SolveOptions{strategy, nullptr, {}});
}

struct CutResult {
  /// Ascending; contains the source, never the sink.
  std::vector<VertexId> source_side;
  /// Ascending edge ids with tail inside and head outside source_side.
  std::vector<EdgeId> cut_edges;
  Capacity capacity = 0;

  std::size_t size() const { return cut_edges.size(); }
  bool contains(VertexId v) const;
};

/// Source side = vertices reachable from s in the residual of `max_flow`
/// (the source-minimal minimum cut). Throws NotMaximalError when the sink is
/// reachable.
CutResult min_cut(const FlowNetwork& net, const Flow& max_flow);

namespace detail {

/// Shared augmentation bookkeeping for every path strategy.
class AugmentLoop {
 public:
  AugmentLoop(const FlowNetwork& net, const Flow& initial, const AugmentObserver& observer);

  const FlowNetwork& network() const { return net_; }
  const Flow& flow() const { return flow_; }
  ResidualView view() const { return ResidualView(net_, flow_); }
  SolveStats& stats() { return stats_; }

  void add_scans(std::size_t n) { stats_.residual_arc_scans += static_cast<std::int64_t>(n); }
  void augment(const AugmentingPath& path);
  SolveResult finish() &&;

 private:
  const FlowNetwork& net_;
  Flow flow_;
  SolveStats stats_;
  const AugmentObserver& observer_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace detail
}  // namespace flowpred
