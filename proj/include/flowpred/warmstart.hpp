#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "flowpred/solve.hpp"

namespace flowpred {

/// Capacity-respecting edge values that may violate conservation.
struct PseudoFlow {
  std::vector<Capacity> values;

  Flow as_flow() const { return Flow{values}; }
};

struct ClipResult {
  PseudoFlow pseudo;
  /// Negative or non-finite predictions that were replaced by zero.
  std::int64_t warnings = 0;
};

/// Floors each prediction, then clips it into [0, c(e)]. `raw` must have one
/// entry per edge.
ClipResult clip_to_capacity(const FlowNetwork& net, std::span<const double> raw);

/// Conservation imbalance of a pseudo-flow at non-terminal vertices.
struct ExcessState {
  std::map<VertexId, Capacity> excess;   // inflow - outflow > 0
  std::map<VertexId, Capacity> deficit;  // outflow - inflow > 0

  std::vector<VertexId> excess_vertices() const;
  std::vector<VertexId> deficit_vertices() const;
  Capacity total_imbalance() const;
  bool balanced() const { return excess.empty() && deficit.empty(); }
};

ExcessState excess_deficit(const FlowNetwork& net, const PseudoFlow& pseudo);

struct RepairResult {
  Flow flow;
  std::int64_t iterations = 0;
};

/// Projects a clipped pseudo-flow onto a feasible flow. Each iteration takes
/// the vertex with the largest excess (smallest id on ties) and routes
/// min(excess, deficit, path bottleneck) along a shortest residual path to
/// the nearest deficit vertex; with no deficit vertex reachable the excess
/// drains back toward s (or t). Once no excess remains, each deficit vertex
/// is fed along a shortest residual path from t (or s). Every iteration
/// lowers the total imbalance by at least one unit.
RepairResult repair_feasibility(const FlowNetwork& net, const PseudoFlow& pseudo);

/// clip -> repair -> ford_fulkerson. `stats.repairs` holds the projection
/// iterations; `stats.augmentations` counts only the solver's augmentations.
SolveResult warm_start_solve(const FlowNetwork& net, std::span<const double> raw,
                             const SolveOptions& options);

}  // namespace flowpred
