#include "flowpred/solve.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

#include "flowpred/error.hpp"
#include "flowpred/guided.hpp"

namespace flowpred {

std::string_view to_string(PathStrategy strategy) {
  switch (strategy) {
    case PathStrategy::kDfs: return "dfs";
    case PathStrategy::kBfs: return "bfs";
    case PathStrategy::kAdjustedBfs: return "adjusted_bfs";
    case PathStrategy::kGuided: return "guided";
  }
  return "?";
}

PathStrategy parse_strategy(std::string_view name) {
  for (auto s : {PathStrategy::kDfs, PathStrategy::kBfs, PathStrategy::kAdjustedBfs,
                 PathStrategy::kGuided}) {
    if (to_string(s) == name) return s;
  }
  throw ContractError("unknown path strategy '" + std::string(name) + "'");
}

void validate_scores(const FlowNetwork& net, const EdgeScores& scores) {
  if (scores.size() != static_cast<std::size_t>(net.edge_count())) {
    throw ContractError("scores cover " + std::to_string(scores.size()) + " edges, network has " +
                        std::to_string(net.edge_count()));
  }
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    const double p = scores[e];
    if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
      throw ContractError("score for edge " + std::to_string(e) + " outside [0,1]");
    }
  }
}

bool CutResult::contains(VertexId v) const {
  return std::binary_search(source_side.begin(), source_side.end(), v);
}

namespace detail {

AugmentLoop::AugmentLoop(const FlowNetwork& net, const Flow& initial,
                         const AugmentObserver& observer)
    : net_(net), flow_(initial), observer_(observer), start_(std::chrono::steady_clock::now()) {
  if (auto violation = find_violation(net, initial)) {
    throw ContractError("initial flow rejected: " + violation->describe());
  }
}

void AugmentLoop::augment(const AugmentingPath& path) {
  if (observer_) observer_(path, flow_);
  push_along(net_, flow_, path.arcs, path.bottleneck);
  ++stats_.augmentations;
}

SolveResult AugmentLoop::finish() && {
  stats_.total_flow = flow_value(net_, flow_);
  stats_.wall_time = std::chrono::duration_cast<std::chrono::microseconds>(
      std::chrono::steady_clock::now() - start_);
  return SolveResult{std::move(flow_), stats_};
}

}  // namespace detail

namespace {

constexpr ResidualArc kNoArc{-1, ArcDirection::kForward};

// Walks parent arcs back from the sink.
AugmentingPath trace_back(const ResidualView& view, const std::vector<ResidualArc>& parent,
                          VertexId source, VertexId sink) {
  AugmentingPath path;
  for (VertexId v = sink; v != source;) {
    const ResidualArc arc = parent[static_cast<std::size_t>(v)];
    path.arcs.push_back(arc);
    v = view.tail(arc);
  }
  std::reverse(path.arcs.begin(), path.arcs.end());
  path.bottleneck = bottleneck(view, path.arcs);
  return path;
}

std::optional<AugmentingPath> find_dfs_path(const ResidualView& view, std::size_t& scans) {
  const FlowNetwork& net = view.network();
  const auto n = static_cast<std::size_t>(net.vertex_count());
  std::vector<ResidualArc> parent(n, kNoArc);
  std::vector<char> seen(n, 0);
  std::vector<std::size_t> cursor(n, 0);
  std::vector<VertexId> stack{net.source()};
  seen[static_cast<std::size_t>(net.source())] = 1;
  while (!stack.empty()) {
    const VertexId u = stack.back();
    if (u == net.sink()) return trace_back(view, parent, net.source(), net.sink());
    const auto ids = net.incident(u);
    auto& next = cursor[static_cast<std::size_t>(u)];
    bool descended = false;
    while (next < ids.size() && !descended) {
      const EdgeId id = ids[next++];
      ++scans;
      const ResidualArc arc{id, net.edge(id).tail == u ? ArcDirection::kForward
                                                       : ArcDirection::kBackward};
      const VertexId w = view.head(arc);
      if (view.residual(arc) > 0 && !seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        parent[static_cast<std::size_t>(w)] = arc;
        stack.push_back(w);
        descended = true;
      }
    }
    if (!descended) stack.pop_back();
  }
  return std::nullopt;
}

std::optional<AugmentingPath> find_bfs_path(const ResidualView& view, std::size_t& scans) {
  const FlowNetwork& net = view.network();
  const auto n = static_cast<std::size_t>(net.vertex_count());
  std::vector<ResidualArc> parent(n, kNoArc);
  std::vector<char> seen(n, 0);
  std::queue<VertexId> frontier;
  frontier.push(net.source());
  seen[static_cast<std::size_t>(net.source())] = 1;
  while (!frontier.empty()) {
    const VertexId u = frontier.front();
    frontier.pop();
    scans += view.for_each_out_arc(u, [&](ResidualArc arc) {
      const auto w = static_cast<std::size_t>(view.head(arc));
      if (seen[w]) return;
      seen[w] = 1;
      parent[w] = arc;
      frontier.push(view.head(arc));
    });
    if (seen[static_cast<std::size_t>(net.sink())]) {
      return trace_back(view, parent, net.source(), net.sink());
    }
  }
  return std::nullopt;
}

template <typename Finder>
SolveResult run_simple(const FlowNetwork& net, const Flow& initial, const AugmentObserver& observer,
                       Finder find) {
  detail::AugmentLoop loop(net, initial, observer);
  while (true) {
    std::size_t scans = 0;
    auto path = find(loop.view(), scans);
    loop.add_scans(scans);
    if (!path) break;
    loop.augment(*path);
  }
  return std::move(loop).finish();
}

}  // namespace

SolveResult ford_fulkerson(const FlowNetwork& net, const Flow& initial, const SolveOptions& options) {
  switch (options.strategy) {
    case PathStrategy::kDfs:
      return run_simple(net, initial, options.on_augment, find_dfs_path);
    case PathStrategy::kBfs:
      return run_simple(net, initial, options.on_augment, find_bfs_path);
    case PathStrategy::kAdjustedBfs:
      return adjusted_edmonds_karp(net, initial, options.on_augment);
    case PathStrategy::kGuided:
      if (options.scores == nullptr) {
        throw ContractError("guided strategy requires edge scores");
      }
      return guided_ford_fulkerson(net, initial, *options.scores, options.on_augment);
  }
  throw ContractError("unknown path strategy");
}

CutResult min_cut(const FlowNetwork& net, const Flow& max_flow) {
  if (auto violation = find_violation(net, max_flow)) {
    throw ContractError("min_cut on infeasible flow: " + violation->describe());
  }
  const ResidualView view(net, max_flow);
  const auto dist = residual_bfs(view, net.source());
  if (dist[static_cast<std::size_t>(net.sink())] >= 0) throw NotMaximalError();

  CutResult cut;
  for (VertexId v = 0; v < net.vertex_count(); ++v) {
    if (dist[static_cast<std::size_t>(v)] >= 0) cut.source_side.push_back(v);
  }
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    const Edge& edge = net.edge(e);
    if (dist[static_cast<std::size_t>(edge.tail)] >= 0 &&
        dist[static_cast<std::size_t>(edge.head)] < 0) {
      cut.cut_edges.push_back(e);
      cut.capacity += edge.capacity;
    }
  }
  return cut;
}

}  // namespace flowpred
