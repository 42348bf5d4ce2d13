#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace flowpred {

using VertexId = std::int32_t;
using EdgeId = std::int32_t;
using Capacity = std::int64_t;

struct Edge {
  VertexId tail = 0;
  VertexId head = 0;
  Capacity capacity = 0;

  bool operator==(const Edge&) const = default;
};

/// Capacitated directed multigraph with a designated source and sink.
///
/// Edge ids are indices into the edge list and are assigned in input order.
/// Parallel edges are distinct; self-loops and negative capacities are
/// rejected at construction. Instances are immutable once built.
class FlowNetwork {
 public:
  /// Validates and builds a network. Throws ContractError naming the
  /// offending edge index (or the terminals) on any violation.
  static FlowNetwork build(VertexId vertex_count, std::vector<Edge> edges, VertexId source,
                           VertexId sink);

  VertexId vertex_count() const { return vertex_count_; }
  EdgeId edge_count() const { return static_cast<EdgeId>(edges_.size()); }
  VertexId source() const { return source_; }
  VertexId sink() const { return sink_; }

  const Edge& edge(EdgeId e) const { return edges_[static_cast<std::size_t>(e)]; }
  std::span<const Edge> edges() const { return edges_; }

  /// Every edge touching `v` (as tail or head), ascending by id.
  std::span<const EdgeId> incident(VertexId v) const;
  std::span<const EdgeId> out_edges(VertexId v) const;
  std::span<const EdgeId> in_edges(VertexId v) const;

  bool operator==(const FlowNetwork& other) const {
    return vertex_count_ == other.vertex_count_ && source_ == other.source_ &&
           sink_ == other.sink_ && edges_ == other.edges_;
  }

 private:
  FlowNetwork() = default;

  VertexId vertex_count_ = 0;
  VertexId source_ = 0;
  VertexId sink_ = 0;
  std::vector<Edge> edges_;
  // CSR-style adjacency, one offset table per list.
  std::vector<std::size_t> incident_offsets_, out_offsets_, in_offsets_;
  std::vector<EdgeId> incident_, out_, in_;
};

/// Per-edge flow values indexed by EdgeId.
struct Flow {
  std::vector<Capacity> values;

  static Flow zero(const FlowNetwork& net) {
    return Flow{std::vector<Capacity>(static_cast<std::size_t>(net.edge_count()), 0)};
  }
  Capacity operator[](EdgeId e) const { return values[static_cast<std::size_t>(e)]; }
  Capacity& operator[](EdgeId e) { return values[static_cast<std::size_t>(e)]; }

  bool operator==(const Flow&) const = default;
};

enum class ViolationKind { kSize, kNegative, kCapacity, kConservation };

struct Violation {
  ViolationKind kind;
  /// Edge id for size/negative/capacity violations, vertex id for conservation.
  std::int64_t index;

  std::string describe() const;
};

/// Capacity constraints are checked first (ascending edge id), then
/// conservation (ascending vertex id). Returns the first violation found.
std::optional<Violation> find_violation(const FlowNetwork& net, const Flow& flow);

inline bool is_feasible(const FlowNetwork& net, const Flow& flow) {
  return !find_violation(net, flow).has_value();
}

/// inflow(v) - outflow(v).
Capacity net_inflow(const FlowNetwork& net, const Flow& flow, VertexId v);

/// Net flow leaving the source. Throws ContractError if `flow` is infeasible.
Capacity flow_value(const FlowNetwork& net, const Flow& flow);

}  // namespace flowpred
