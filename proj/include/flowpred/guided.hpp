#pragma once

#include <functional>
#include <optional>
#include <queue>
#include <span>
#include <vector>

#include "flowpred/solve.hpp"

namespace flowpred {

/// Among all fewest-arc residual paths from `from` to `to` that avoid the
/// banned vertices, returns one of maximum bottleneck (BFS layering followed
/// by a widest-path pass over the layered DAG). Ties go to the path found
/// first in ascending edge id order. `from == to` yields the empty path with
/// an unbounded bottleneck. `banned` is indexed by vertex; empty means none.
std::optional<ResidualPath> shortest_max_bottleneck_path(const ResidualView& view, VertexId from,
                                                         VertexId to,
                                                         std::span<const char> banned = {},
                                                         std::size_t* arc_scans = nullptr);

/// Edmonds-Karp with maximum-bottleneck tie-breaking.
SolveResult adjusted_edmonds_karp(const FlowNetwork& net, const Flow& initial,
                                  const AugmentObserver& observer = {});

/// Max-heap of (score, edge) with lazy deletion. Ties pop in ascending edge
/// id. A removed edge can be re-inserted any number of times and keeps its
/// original score.
class ScoreHeap {
 public:
  explicit ScoreHeap(const EdgeScores& scores);

  /// Inserts every edge whose `live(e)` is true.
  template <typename Pred>
  void fill(Pred live) {
    for (EdgeId e = 0; e < static_cast<EdgeId>(scores_.size()); ++e) {
      if (live(e)) insert(e);
    }
  }

  /// No-op when `e` is already present.
  void insert(EdgeId e);
  /// No-op when `e` is absent. The heap slot is reclaimed lazily.
  void remove(EdgeId e);
  bool contains(EdgeId e) const { return present_[static_cast<std::size_t>(e)] != 0; }
  /// Removes and returns the highest-scoring present edge.
  std::optional<EdgeId> pop();
  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }

 private:
  struct Entry {
    double score;
    EdgeId edge;
  };
  struct Lower {
    bool operator()(const Entry& a, const Entry& b) const {
      if (a.score != b.score) return a.score < b.score;
      return a.edge > b.edge;
    }
  };

  std::vector<double> scores_;
  std::vector<char> present_;
  std::size_t count_ = 0;
  std::priority_queue<Entry, std::vector<Entry>, Lower> queue_;
};

/// Score-guided Ford-Fulkerson. Repeatedly pops the best live pivot edge
/// (v, w), joins a source segment s ~> v and a sink segment w ~> t around it
/// and augments; pivots that cannot be completed are set aside until the next
/// augmentation. When every pivot has been set aside a single
/// maximum-bottleneck shortest augmenting path is used instead, so the result
/// is always a maximum flow.
SolveResult guided_ford_fulkerson(const FlowNetwork& net, const Flow& initial,
                                  const EdgeScores& scores, const AugmentObserver& observer = {});

/// Produces edge scores for a network and a (repaired) flow.
using ScoreFn = std::function<EdgeScores(const FlowNetwork&, const Flow&)>;

/// Warm start followed by guided search: clip and repair `raw_flow`, score
/// the repaired residual with `scorer`, then run guided_ford_fulkerson.
SolveResult combined_ford_fulkerson(const FlowNetwork& net, std::span<const double> raw_flow,
                                    const ScoreFn& scorer, const AugmentObserver& observer = {});

inline SolveResult combined_ford_fulkerson(const FlowNetwork& net, std::span<const double> raw_flow,
                                           const EdgeScores& scores,
                                           const AugmentObserver& observer = {}) {
  return combined_ford_fulkerson(
      net, raw_flow, [&](const FlowNetwork&, const Flow&) { return scores; }, observer);
}

}  // namespace flowpred
