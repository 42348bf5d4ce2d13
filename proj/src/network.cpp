#include "flowpred/network.hpp"

#include <algorithm>

#include "flowpred/error.hpp"

namespace flowpred {
namespace {

// Buckets edge ids by vertex. `owners(e, emit)` calls emit(v) for every
// vertex list that edge e belongs to. Ids end up ascending because edges are
// visited in order.
template <typename Owners>
void bucket(VertexId vertex_count, EdgeId edge_count, Owners owners,
            std::vector<std::size_t>& offsets, std::vector<EdgeId>& ids) {
  offsets.assign(static_cast<std::size_t>(vertex_count) + 1, 0);
  for (EdgeId e = 0; e < edge_count; ++e) {
    owners(e, [&](VertexId v) { ++offsets[static_cast<std::size_t>(v) + 1]; });
  }
  for (std::size_t v = 0; v < static_cast<std::size_t>(vertex_count); ++v) {
    offsets[v + 1] += offsets[v];
  }
  ids.assign(offsets.back(), 0);
  std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
  for (EdgeId e = 0; e < edge_count; ++e) {
    owners(e, [&](VertexId v) { ids[cursor[static_cast<std::size_t>(v)]++] = e; });
  }
}

}  // namespace

FlowNetwork FlowNetwork::build(VertexId vertex_count, std::vector<Edge> edges, VertexId source,
                               VertexId sink) {
  if (vertex_count < 2) {
    throw ContractError("network needs at least 2 vertices, got " +
                        std::to_string(vertex_count));
  }
  auto in_range = [&](VertexId v) { return v >= 0 && v < vertex_count; };
  if (!in_range(source)) throw ContractError("source " + std::to_string(source) + " out of range");
  if (!in_range(sink)) throw ContractError("sink " + std::to_string(sink) + " out of range");
  if (source == sink) throw ContractError("source and sink coincide at vertex " + std::to_string(source));
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    const std::string where = "edge " + std::to_string(i) + ": ";
    if (!in_range(e.tail) || !in_range(e.head)) {
      throw ContractError(where + "vertex out of range (" + std::to_string(e.tail) + " -> " +
                          std::to_string(e.head) + ")");
    }
    if (e.tail == e.head) throw ContractError(where + "self-loop at vertex " + std::to_string(e.tail));
    if (e.capacity < 0) throw ContractError(where + "negative capacity " + std::to_string(e.capacity));
  }

  FlowNetwork net;
  net.vertex_count_ = vertex_count;
  net.source_ = source;
  net.sink_ = sink;
  net.edges_ = std::move(edges);
  const auto m = net.edge_count();
  const auto& es = net.edges_;
  bucket(vertex_count, m,
         [&](EdgeId e, auto emit) {
           emit(es[static_cast<std::size_t>(e)].tail);
           emit(es[static_cast<std::size_t>(e)].head);
         },
         net.incident_offsets_, net.incident_);
  bucket(vertex_count, m, [&](EdgeId e, auto emit) { emit(es[static_cast<std::size_t>(e)].tail); },
         net.out_offsets_, net.out_);
  bucket(vertex_count, m, [&](EdgeId e, auto emit) { emit(es[static_cast<std::size_t>(e)].head); },
         net.in_offsets_, net.in_);
  return net;
}

namespace {
std::span<const EdgeId> slice(const std::vector<std::size_t>& offsets,
                              const std::vector<EdgeId>& ids, VertexId v) {
  const auto b = offsets[static_cast<std::size_t>(v)];
  const auto e = offsets[static_cast<std::size_t>(v) + 1];
  return std::span<const EdgeId>(ids.data() + b, e - b);
}
}  // namespace

std::span<const EdgeId> FlowNetwork::incident(VertexId v) const {
  return slice(incident_offsets_, incident_, v);
}
std::span<const EdgeId> FlowNetwork::out_edges(VertexId v) const { return slice(out_offsets_, out_, v); }
std::span<const EdgeId> FlowNetwork::in_edges(VertexId v) const { return slice(in_offsets_, in_, v); }

std::string Violation::describe() const {
  switch (kind) {
    case ViolationKind::kSize:
      return "flow has " + std::to_string(index) + " values, network size differs";
    case ViolationKind::kNegative:
      return "negative flow on edge " + std::to_string(index);
    case ViolationKind::kCapacity:
      return "capacity violated on edge " + std::to_string(index);
    case ViolationKind::kConservation:
      return "conservation violated at vertex " + std::to_string(index);
  }
  return "unknown violation";
}

Capacity net_inflow(const FlowNetwork& net, const Flow& flow, VertexId v) {
  Capacity balance = 0;
  for (EdgeId e : net.in_edges(v)) balance += flow[e];
  for (EdgeId e : net.out_edges(v)) balance -= flow[e];
  return balance;
}

std::optional<Violation> find_violation(const FlowNetwork& net, const Flow& flow) {
  if (flow.values.size() != static_cast<std::size_t>(net.edge_count())) {
    return Violation{ViolationKind::kSize, static_cast<std::int64_t>(flow.values.size())};
  }
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    if (flow[e] < 0) return Violation{ViolationKind::kNegative, e};
    if (flow[e] > net.edge(e).capacity) return Violation{ViolationKind::kCapacity, e};
  }
  for (VertexId v = 0; v < net.vertex_count(); ++v) {
    if (v == net.source() || v == net.sink()) continue;
    if (net_inflow(net, flow, v) != 0) return Violation{ViolationKind::kConservation, v};
  }
  return std::nullopt;
}

Capacity flow_value(const FlowNetwork& net, const Flow& flow) {
  if (auto violation = find_violation(net, flow)) {
    throw ContractError("infeasible flow: " + violation->describe());
  }
  return -net_inflow(net, flow, net.source());
}

}  // namespace flowpred
