#pragma once

#include <limits>
#include <span>
#include <vector>

#include "flowpred/network.hpp"

namespace flowpred {

inline constexpr Capacity kUnbounded = std::numeric_limits<Capacity>::max();

enum class ArcDirection : std::uint8_t { kForward, kBackward };

/// A residual arc: the forward copy of edge `edge` (remaining capacity
/// c - f) or its reverse (cancellable flow f).
struct ResidualArc {
  EdgeId edge = 0;
  ArcDirection direction = ArcDirection::kForward;

  bool operator==(const ResidualArc&) const = default;
};

/// Read-only residual graph over a (network, flow) pair. Reverse arcs are
/// derived from the flow on demand; nothing is stored besides the two
/// references, so the view must not outlive either.
class ResidualView {
 public:
  ResidualView(const FlowNetwork& net, const Flow& flow) : net_(&net), flow_(&flow) {}

  const FlowNetwork& network() const { return *net_; }

  Capacity residual(ResidualArc arc) const {
    const Edge& e = net_->edge(arc.edge);
    return arc.direction == ArcDirection::kForward ? e.capacity - (*flow_)[arc.edge]
                                                   : (*flow_)[arc.edge];
  }
  VertexId tail(ResidualArc arc) const {
    const Edge& e = net_->edge(arc.edge);
    return arc.direction == ArcDirection::kForward ? e.tail : e.head;
  }
  VertexId head(ResidualArc arc) const {
    const Edge& e = net_->edge(arc.edge);
    return arc.direction == ArcDirection::kForward ? e.head : e.tail;
  }

  /// Calls fn(arc) for every residual arc leaving `v` with positive residual,
  /// in ascending edge id order. Returns the number of arcs inspected.
  template <typename Fn>
  std::size_t for_each_out_arc(VertexId v, Fn&& fn) const {
    const auto ids = net_->incident(v);
    for (EdgeId id : ids) {
      const ResidualArc arc{id, net_->edge(id).tail == v ? ArcDirection::kForward
                                                         : ArcDirection::kBackward};
      if (residual(arc) > 0) fn(arc);
    }
    return ids.size();
  }

  /// Same as for_each_out_arc but for arcs entering `v`.
  template <typename Fn>
  std::size_t for_each_in_arc(VertexId v, Fn&& fn) const {
    const auto ids = net_->incident(v);
    for (EdgeId id : ids) {
      const ResidualArc arc{id, net_->edge(id).head == v ? ArcDirection::kForward
                                                         : ArcDirection::kBackward};
      if (residual(arc) > 0) fn(arc);
    }
    return ids.size();
  }

 private:
  const FlowNetwork* net_;
  const Flow* flow_;
};

/// Ordered sequence of residual arcs; bottleneck is kUnbounded for an empty
/// path.
struct ResidualPath {
  std::vector<ResidualArc> arcs;
  Capacity bottleneck = kUnbounded;
};

Capacity bottleneck(const ResidualView& view, std::span<const ResidualArc> arcs);

/// Vertex sequence visited by `arcs` starting at `start`.
std::vector<VertexId> path_vertices(const FlowNetwork& net, VertexId start,
                                    std::span<const ResidualArc> arcs);

/// Pushes `delta` along the arcs: forward arcs add flow, backward arcs cancel.
void push_along(const FlowNetwork& net, Flow& flow, std::span<const ResidualArc> arcs,
                Capacity delta);

/// Hop distances in the residual graph from `origin` (or to it when
/// `reverse`). Unreachable vertices get -1. Banned vertices are never entered.
std::vector<int> residual_bfs(const ResidualView& view, VertexId origin, bool reverse = false,
                              std::span<const char> banned = {});

}  // namespace flowpred
