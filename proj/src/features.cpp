#include "flowpred/features.hpp"

#include <algorithm>
#include <vector>

#include "flowpred/residual.hpp"

namespace flowpred {
namespace {

struct VertexTables {
  std::vector<int> from_source;
  std::vector<int> to_sink;
  std::vector<int> live_out;
  std::vector<int> live_in;
};

int count_distinct(std::vector<VertexId>& ids) {
  std::sort(ids.begin(), ids.end());
  return static_cast<int>(std::unique(ids.begin(), ids.end()) - ids.begin());
}

VertexTables vertex_tables(const FlowNetwork& net, const Flow& flow) {
  const ResidualView view(net, flow);
  VertexTables tables;
  tables.from_source = residual_bfs(view, net.source());
  tables.to_sink = residual_bfs(view, net.sink(), /*reverse=*/true);
  const auto n = static_cast<std::size_t>(net.vertex_count());
  tables.live_out.assign(n, 0);
  tables.live_in.assign(n, 0);
  std::vector<VertexId> scratch;
  for (VertexId v = 0; v < net.vertex_count(); ++v) {
    scratch.clear();
    for (EdgeId e : net.out_edges(v)) {
      if (flow[e] < net.edge(e).capacity) scratch.push_back(net.edge(e).head);
    }
    tables.live_out[static_cast<std::size_t>(v)] = count_distinct(scratch);
    scratch.clear();
    for (EdgeId e : net.in_edges(v)) {
      if (flow[e] < net.edge(e).capacity) scratch.push_back(net.edge(e).tail);
    }
    tables.live_in[static_cast<std::size_t>(v)] = count_distinct(scratch);
  }
  return tables;
}

FeatureVector row(const FlowNetwork& net, const VertexTables& tables, EdgeId id) {
  const Edge& e = net.edge(id);
  const auto u = static_cast<std::size_t>(e.tail);
  const auto v = static_cast<std::size_t>(e.head);
  const double unreachable = static_cast<double>(net.vertex_count());
  auto hops = [&](int d) { return d < 0 ? unreachable : static_cast<double>(d); };
  FeatureVector phi;
  phi[kSourceDistance] = hops(tables.from_source[u]);
  phi[kSinkDistance] = hops(tables.to_sink[v]);
  phi[kOutDegree] = static_cast<double>(net.out_edges(e.tail).size());
  phi[kInDegree] = static_cast<double>(net.in_edges(e.head).size());
  phi[kLiveOutNeighbors] = tables.live_out[u];
  phi[kLiveInNeighbors] = tables.live_in[v];
  phi[kCapacity] = static_cast<double>(e.capacity);
  return phi;
}

}  // namespace

FeatureVector edge_features(const FlowNetwork& net, const Flow& flow, EdgeId edge) {
  return row(net, vertex_tables(net, flow), edge);
}

FeatureMatrix edge_feature_matrix(const FlowNetwork& net, const Flow& flow) {
  const VertexTables tables = vertex_tables(net, flow);
  FeatureMatrix phi(net.edge_count(), static_cast<Eigen::Index>(kFeatureDim));
  for (EdgeId e = 0; e < net.edge_count(); ++e) phi.row(e) = row(net, tables, e).transpose();
  return phi;
}

}  // namespace flowpred
