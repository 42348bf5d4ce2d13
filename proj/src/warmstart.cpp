#include "flowpred/warmstart.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <string>

#include "flowpred/error.hpp"

namespace flowpred {

ClipResult clip_to_capacity(const FlowNetwork& net, std::span<const double> raw) {
  if (raw.size() != static_cast<std::size_t>(net.edge_count())) {
    throw ContractError("prediction has " + std::to_string(raw.size()) + " values, network has " +
                        std::to_string(net.edge_count()) + " edges");
  }
  ClipResult result;
  result.pseudo.values.resize(raw.size(), 0);
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    const double value = raw[static_cast<std::size_t>(e)];
    const Capacity cap = net.edge(e).capacity;
    if (std::isnan(value) || value < 0.0) {
      ++result.warnings;
      continue;
    }
    const double floored = std::floor(value);
    result.pseudo.values[static_cast<std::size_t>(e)] =
        floored >= static_cast<double>(cap) ? cap : static_cast<Capacity>(floored);
  }
  return result;
}

std::vector<VertexId> ExcessState::excess_vertices() const {
  std::vector<VertexId> out;
  for (const auto& [v, amount] : excess) out.push_back(v);
  return out;
}

std::vector<VertexId> ExcessState::deficit_vertices() const {
  std::vector<VertexId> out;
  for (const auto& [v, amount] : deficit) out.push_back(v);
  return out;
}

Capacity ExcessState::total_imbalance() const {
  Capacity total = 0;
  for (const auto& [v, amount] : excess) total += amount;
  for (const auto& [v, amount] : deficit) total += amount;
  return total;
}

ExcessState excess_deficit(const FlowNetwork& net, const PseudoFlow& pseudo) {
  const Flow flow = pseudo.as_flow();
  ExcessState state;
  for (VertexId v = 0; v < net.vertex_count(); ++v) {
    if (v == net.source() || v == net.sink()) continue;
    const Capacity balance = net_inflow(net, flow, v);
    if (balance > 0) state.excess[v] = balance;
    if (balance < 0) state.deficit[v] = -balance;
  }
  return state;
}

namespace {

// Shortest residual path from `origin` to any vertex flagged in `targets`
// (forward search), or from any flagged vertex to `origin` (reverse search).
// Arcs are returned in travel order.
std::optional<ResidualPath> nearest_path(const ResidualView& view, VertexId origin,
                                         const std::vector<char>& targets, bool reverse) {
  const FlowNetwork& net = view.network();
  const auto n = static_cast<std::size_t>(net.vertex_count());
  std::vector<char> seen(n, 0);
  std::vector<ResidualArc> via(n);
  std::queue<VertexId> frontier;
  seen[static_cast<std::size_t>(origin)] = 1;
  frontier.push(origin);
  std::optional<VertexId> hit;
  while (!frontier.empty() && !hit) {
    const VertexId u = frontier.front();
    frontier.pop();
    auto visit = [&](ResidualArc arc) {
      if (hit) return;
      const VertexId w = reverse ? view.tail(arc) : view.head(arc);
      const auto wi = static_cast<std::size_t>(w);
      if (seen[wi]) return;
      seen[wi] = 1;
      via[wi] = arc;
      if (targets[wi]) hit = w;
      frontier.push(w);
    };
    if (reverse) {
      view.for_each_in_arc(u, visit);
    } else {
      view.for_each_out_arc(u, visit);
    }
  }
  if (!hit) return std::nullopt;

  ResidualPath path;
  for (VertexId v = *hit; v != origin;) {
    const ResidualArc arc = via[static_cast<std::size_t>(v)];
    path.arcs.push_back(arc);
    v = reverse ? view.head(arc) : view.tail(arc);
  }
  // Forward search collected arcs back-to-front; reverse search already
  // walked from the far end toward the origin.
  if (!reverse) std::reverse(path.arcs.begin(), path.arcs.end());
  path.bottleneck = bottleneck(view, path.arcs);
  return path;
}

template <typename Map>
VertexId largest(const Map& amounts) {
  auto best = amounts.begin();
  for (auto it = amounts.begin(); it != amounts.end(); ++it) {
    if (it->second > best->second) best = it;
  }
  return best->first;
}

}  // namespace

RepairResult repair_feasibility(const FlowNetwork& net, const PseudoFlow& pseudo) {
  RepairResult result{pseudo.as_flow(), 0};
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    if (result.flow[e] < 0 || result.flow[e] > net.edge(e).capacity) {
      throw ContractError("pseudo-flow not clipped at edge " + std::to_string(e));
    }
  }
  const auto n = static_cast<std::size_t>(net.vertex_count());
  ExcessState state = excess_deficit(net, PseudoFlow{result.flow.values});
  auto terminal = [&](VertexId v) {
    std::vector<char> flags(n, 0);
    flags[static_cast<std::size_t>(v)] = 1;
    return flags;
  };

  while (!state.balanced()) {
    const ResidualView view(net, result.flow);
    std::optional<ResidualPath> path;
    Capacity amount = 0;
    if (!state.excess.empty()) {
      const VertexId from = largest(state.excess);
      amount = state.excess.at(from);
      std::vector<char> deficits(n, 0);
      for (const auto& [v, d] : state.deficit) deficits[static_cast<std::size_t>(v)] = 1;
      path = nearest_path(view, from, deficits, false);
      if (path) {
        const VertexId to = view.head(path->arcs.back());
        amount = std::min(amount, state.deficit.at(to));
      } else {
        path = nearest_path(view, from, terminal(net.source()), false);
        if (!path) path = nearest_path(view, from, terminal(net.sink()), false);
      }
    } else {
      const VertexId to = largest(state.deficit);
      amount = state.deficit.at(to);
      path = nearest_path(view, to, terminal(net.sink()), true);
      if (!path) path = nearest_path(view, to, terminal(net.source()), true);
    }
    if (!path) {
      // Flow decomposition guarantees a route for every imbalanced vertex.
      throw std::logic_error("repair_feasibility: imbalanced vertex without residual route");
    }
    amount = std::min(amount, path->bottleneck);
    push_along(net, result.flow, path->arcs, amount);
    ++result.iterations;
    state = excess_deficit(net, PseudoFlow{result.flow.values});
  }
  return result;
}

SolveResult warm_start_solve(const FlowNetwork& net, std::span<const double> raw,
                             const SolveOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const ClipResult clipped = clip_to_capacity(net, raw);
  const RepairResult repaired = repair_feasibility(net, clipped.pseudo);
  const auto repair_time = std::chrono::duration_cast<std::chrono::microseconds>(
      std::chrono::steady_clock::now() - start);
  SolveResult result = ford_fulkerson(net, repaired.flow, options);
  result.stats.repairs = repaired.iterations;
  result.stats.wall_time += repair_time;
  return result;
}

}  // namespace flowpred
