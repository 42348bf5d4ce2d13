#include "flowpred/guided.hpp"

#include <algorithm>
#include <queue>

#include "flowpred/error.hpp"
#include "flowpred/warmstart.hpp"

namespace flowpred {

std::optional<ResidualPath> shortest_max_bottleneck_path(const ResidualView& view, VertexId from,
                                                         VertexId to, std::span<const char> banned,
                                                         std::size_t* arc_scans) {
  if (from == to) return ResidualPath{};
  const FlowNetwork& net = view.network();
  const auto n = static_cast<std::size_t>(net.vertex_count());
  std::size_t scans = 0;

  // BFS layering, stopping once the target's layer is complete.
  std::vector<int> dist(n, -1);
  std::vector<VertexId> order;
  order.reserve(n);
  dist[static_cast<std::size_t>(from)] = 0;
  order.push_back(from);
  int target_layer = -1;
  for (std::size_t head = 0; head < order.size(); ++head) {
    const VertexId u = order[head];
    const int du = dist[static_cast<std::size_t>(u)];
    if (target_layer >= 0 && du >= target_layer) break;
    scans += view.for_each_out_arc(u, [&](ResidualArc arc) {
      const auto w = static_cast<std::size_t>(view.head(arc));
      if (dist[w] >= 0 || (!banned.empty() && banned[w])) return;
      dist[w] = du + 1;
      order.push_back(view.head(arc));
      if (view.head(arc) == to) target_layer = du + 1;
    });
  }
  if (target_layer < 0) {
    if (arc_scans) *arc_scans += scans;
    return std::nullopt;
  }

  // Widest path over layer-advancing arcs, in BFS order.
  std::vector<Capacity> width(n, 0);
  std::vector<ResidualArc> via(n);
  width[static_cast<std::size_t>(from)] = kUnbounded;
  for (const VertexId u : order) {
    const int du = dist[static_cast<std::size_t>(u)];
    if (du >= target_layer) break;
    const Capacity wu = width[static_cast<std::size_t>(u)];
    scans += view.for_each_out_arc(u, [&](ResidualArc arc) {
      const auto w = static_cast<std::size_t>(view.head(arc));
      if (dist[w] != du + 1) return;
      const Capacity candidate = std::min(wu, view.residual(arc));
      if (candidate > width[w]) {
        width[w] = candidate;
        via[w] = arc;
      }
    });
  }
  if (arc_scans) *arc_scans += scans;

  ResidualPath path;
  for (VertexId v = to; v != from;) {
    const ResidualArc arc = via[static_cast<std::size_t>(v)];
    path.arcs.push_back(arc);
    v = view.tail(arc);
  }
  std::reverse(path.arcs.begin(), path.arcs.end());
  path.bottleneck = width[static_cast<std::size_t>(to)];
  return path;
}

SolveResult adjusted_edmonds_karp(const FlowNetwork& net, const Flow& initial,
                                  const AugmentObserver& observer) {
  detail::AugmentLoop loop(net, initial, observer);
  while (true) {
    std::size_t scans = 0;
    auto path = shortest_max_bottleneck_path(loop.view(), net.source(), net.sink(), {}, &scans);
    loop.add_scans(scans);
    if (!path) break;
    loop.augment(AugmentingPath{std::move(path->arcs), path->bottleneck, std::nullopt});
  }
  return std::move(loop).finish();
}

ScoreHeap::ScoreHeap(const EdgeScores& scores)
    : scores_(scores.values), present_(scores.values.size(), 0) {}

void ScoreHeap::insert(EdgeId e) {
  auto& flag = present_[static_cast<std::size_t>(e)];
  if (flag) return;
  flag = 1;
  ++count_;
  queue_.push(Entry{scores_[static_cast<std::size_t>(e)], e});
}

void ScoreHeap::remove(EdgeId e) {
  auto& flag = present_[static_cast<std::size_t>(e)];
  if (!flag) return;
  flag = 0;
  --count_;
}

std::optional<EdgeId> ScoreHeap::pop() {
  while (!queue_.empty()) {
    const Entry top = queue_.top();
    queue_.pop();
    auto& flag = present_[static_cast<std::size_t>(top.edge)];
    // Stale entries left behind by remove() are skipped here. A removed and
    // re-inserted edge may have two entries; the first one wins and the
    // second becomes stale.
    if (!flag) continue;
    flag = 0;
    --count_;
    return top.edge;
  }
  return std::nullopt;
}

namespace {

// Builds P1 . pivot . P2 with the two segments vertex-disjoint.
// `source_first` picks which segment is searched first; the second search
// avoids every vertex of the first.
std::optional<AugmentingPath> assemble_around(const ResidualView& view, EdgeId pivot,
                                              bool source_first, std::size_t& scans) {
  const FlowNetwork& net = view.network();
  const Edge& e = net.edge(pivot);
  const VertexId s = net.source();
  const VertexId t = net.sink();
  const VertexId v = e.tail;
  const VertexId w = e.head;
  const auto n = static_cast<std::size_t>(net.vertex_count());

  std::optional<ResidualPath> head_part;  // s ~> v
  std::optional<ResidualPath> tail_part;  // w ~> t
  std::vector<char> banned(n, 0);
  auto ban = [&](VertexId x) { banned[static_cast<std::size_t>(x)] = 1; };

  if (source_first) {
    ban(w);
    ban(t);
    head_part = shortest_max_bottleneck_path(view, s, v, banned, &scans);
    if (!head_part) return std::nullopt;
    std::fill(banned.begin(), banned.end(), 0);
    for (VertexId x : path_vertices(net, s, head_part->arcs)) ban(x);
    tail_part = shortest_max_bottleneck_path(view, w, t, banned, &scans);
  } else {
    ban(v);
    ban(s);
    tail_part = shortest_max_bottleneck_path(view, w, t, banned, &scans);
    if (!tail_part) return std::nullopt;
    std::fill(banned.begin(), banned.end(), 0);
    for (VertexId x : path_vertices(net, w, tail_part->arcs)) ban(x);
    head_part = shortest_max_bottleneck_path(view, s, v, banned, &scans);
  }
  if (!head_part || !tail_part) return std::nullopt;

  const ResidualArc pivot_arc{pivot, ArcDirection::kForward};
  AugmentingPath path;
  path.arcs = std::move(head_part->arcs);
  path.pivot_position = path.arcs.size();
  path.arcs.push_back(pivot_arc);
  path.arcs.insert(path.arcs.end(), tail_part->arcs.begin(), tail_part->arcs.end());
  path.bottleneck =
      std::min({head_part->bottleneck, view.residual(pivot_arc), tail_part->bottleneck});
  return path;
}

std::optional<AugmentingPath> assemble(const ResidualView& view, EdgeId pivot, std::size_t& scans) {
  const FlowNetwork& net = view.network();
  const Edge& e = net.edge(pivot);
  // A pivot leaving the sink or entering the source lies on no simple s-t path.
  if (e.tail == net.sink() || e.head == net.source()) return std::nullopt;
  if (auto path = assemble_around(view, pivot, true, scans)) return path;
  return assemble_around(view, pivot, false, scans);
}

}  // namespace

SolveResult guided_ford_fulkerson(const FlowNetwork& net, const Flow& initial,
                                  const EdgeScores& scores, const AugmentObserver& observer) {
  validate_scores(net, scores);
  detail::AugmentLoop loop(net, initial, observer);
  auto live = [&](EdgeId e) { return loop.flow()[e] < net.edge(e).capacity; };

  ScoreHeap heap(scores);
  heap.fill(live);
  std::vector<EdgeId> set_aside;

  auto after_augment = [&](const AugmentingPath& path) {
    for (const auto& arc : path.arcs) {
      if (live(arc.edge)) {
        heap.insert(arc.edge);
      } else {
        heap.remove(arc.edge);
      }
    }
    for (EdgeId e : set_aside) {
      if (live(e)) heap.insert(e);
    }
    set_aside.clear();
  };

  while (true) {
    const auto pivot = heap.pop();
    std::size_t scans = 0;
    if (!pivot) {
      auto fallback =
          shortest_max_bottleneck_path(loop.view(), net.source(), net.sink(), {}, &scans);
      loop.add_scans(scans);
      if (!fallback) break;
      AugmentingPath path{std::move(fallback->arcs), fallback->bottleneck, std::nullopt};
      loop.augment(path);
      ++loop.stats().fallback_augmentations;
      after_augment(path);
      continue;
    }
    // Saturated pivots stay out until a later augmentation revives them.
    if (!live(*pivot)) continue;
    auto path = assemble(loop.view(), *pivot, scans);
    loop.add_scans(scans);
    if (!path) {
      set_aside.push_back(*pivot);
      continue;
    }
    loop.augment(*path);
    after_augment(*path);
  }
  return std::move(loop).finish();
}

SolveResult combined_ford_fulkerson(const FlowNetwork& net, std::span<const double> raw_flow,
                                    const ScoreFn& scorer, const AugmentObserver& observer) {
  const auto start = std::chrono::steady_clock::now();
  const ClipResult clipped = clip_to_capacity(net, raw_flow);
  const RepairResult repaired = repair_feasibility(net, clipped.pseudo);
  const EdgeScores scores = scorer(net, repaired.flow);
  const auto prep_time = std::chrono::duration_cast<std::chrono::microseconds>(
      std::chrono::steady_clock::now() - start);
  SolveResult result = guided_ford_fulkerson(net, repaired.flow, scores, observer);
  result.stats.repairs = repaired.iterations;
  result.stats.wall_time += prep_time;
  return result;
}

}  // namespace flowpred
