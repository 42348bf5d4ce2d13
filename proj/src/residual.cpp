#include "flowpred/residual.hpp"

#include <algorithm>
#include <cassert>
#include <queue>

namespace flowpred {

Capacity bottleneck(const ResidualView& view, std::span<const ResidualArc> arcs) {
  Capacity delta = kUnbounded;
  for (const auto& arc : arcs) delta = std::min(delta, view.residual(arc));
  return delta;
}

std::vector<VertexId> path_vertices(const FlowNetwork& net, VertexId start,
                                    std::span<const ResidualArc> arcs) {
  std::vector<VertexId> vertices{start};
  vertices.reserve(arcs.size() + 1);
  for (const auto& arc : arcs) {
    const Edge& e = net.edge(arc.edge);
    vertices.push_back(arc.direction == ArcDirection::kForward ? e.head : e.tail);
  }
  return vertices;
}

void push_along(const FlowNetwork& net, Flow& flow, std::span<const ResidualArc> arcs,
                Capacity delta) {
  for (const auto& arc : arcs) {
    if (arc.direction == ArcDirection::kForward) {
      flow[arc.edge] += delta;
      assert(flow[arc.edge] <= net.edge(arc.edge).capacity);
    } else {
      flow[arc.edge] -= delta;
      assert(flow[arc.edge] >= 0);
    }
  }
  (void)net;
}

std::vector<int> residual_bfs(const ResidualView& view, VertexId origin, bool reverse,
                              std::span<const char> banned) {
  const auto n = static_cast<std::size_t>(view.network().vertex_count());
  std::vector<int> dist(n, -1);
  std::queue<VertexId> frontier;
  dist[static_cast<std::size_t>(origin)] = 0;
  frontier.push(origin);
  auto visit = [&](VertexId from, VertexId to) {
    const auto t = static_cast<std::size_t>(to);
    if (dist[t] >= 0 || (!banned.empty() && banned[t])) return;
    dist[t] = dist[static_cast<std::size_t>(from)] + 1;
    frontier.push(to);
  };
  while (!frontier.empty()) {
    const VertexId u = frontier.front();
    frontier.pop();
    if (reverse) {
      view.for_each_in_arc(u, [&](ResidualArc arc) { visit(u, view.tail(arc)); });
    } else {
      view.for_each_out_arc(u, [&](ResidualArc arc) { visit(u, view.head(arc)); });
    }
  }
  return dist;
}

}  // namespace flowpred
