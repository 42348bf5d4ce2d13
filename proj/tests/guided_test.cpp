#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "flowpred/error.hpp"
#include "flowpred/generators.hpp"
#include "flowpred/guided.hpp"
#include "flowpred/predictors.hpp"
#include "test_support.hpp"

using namespace flowpred;

namespace {

EdgeScores random_scores(const FlowNetwork& net, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  EdgeScores scores;
  for (EdgeId e = 0; e < net.edge_count(); ++e) scores.values.push_back(u(rng));
  return scores;
}

// Checks that `path` is a vertex-simple s-t path of positive-residual arcs
// under `before` with the advertised bottleneck.
::testing::AssertionResult valid_augmenting_path(const FlowNetwork& net, const Flow& before,
                                                 const AugmentingPath& path) {
  const ResidualView view(net, before);
  if (path.arcs.empty()) return ::testing::AssertionFailure() << "empty path";
  Capacity width = kUnbounded;
  for (const auto& arc : path.arcs) {
    if (view.residual(arc) <= 0) {
      return ::testing::AssertionFailure() << "zero-residual arc on edge " << arc.edge;
    }
    width = std::min(width, view.residual(arc));
  }
  const auto verts = path_vertices(net, net.source(), path.arcs);
  for (std::size_t i = 0; i < path.arcs.size(); ++i) {
    if (view.tail(path.arcs[i]) != verts[i]) return ::testing::AssertionFailure() << "broken chain";
  }
  if (verts.back() != net.sink()) return ::testing::AssertionFailure() << "does not reach sink";
  if (std::set<VertexId>(verts.begin(), verts.end()).size() != verts.size()) {
    return ::testing::AssertionFailure() << "path repeats a vertex";
  }
  if (width != path.bottleneck) {
    return ::testing::AssertionFailure() << "bottleneck " << path.bottleneck << " vs " << width;
  }
  return ::testing::AssertionSuccess();
}

TEST(ShortestMaxBottleneck, PrefersWiderOfEquallyShortPaths) {
  // Two 2-hop paths: via 1 (width 1) and via 2 (width 4); one 1-hop arc of
  // width 1 is shorter still once added.
  const auto net = FlowNetwork::build(4, {{0, 1, 5}, {1, 3, 1}, {0, 2, 4}, {2, 3, 9}}, 0, 3);
  const Flow zero = Flow::zero(net);
  const ResidualView view(net, zero);
  const auto path = shortest_max_bottleneck_path(view, 0, 3);
  ASSERT_TRUE(path);
  EXPECT_EQ(path->bottleneck, 4);
  EXPECT_EQ(path->arcs, (std::vector<ResidualArc>{{2, ArcDirection::kForward},
                                                  {3, ArcDirection::kForward}}));

  const auto direct = FlowNetwork::build(
      4, {{0, 1, 5}, {1, 3, 1}, {0, 2, 4}, {2, 3, 9}, {0, 3, 1}}, 0, 3);
  const Flow zero2 = Flow::zero(direct);
  const auto short_path = shortest_max_bottleneck_path(ResidualView(direct, zero2), 0, 3);
  ASSERT_TRUE(short_path);
  EXPECT_EQ(short_path->arcs.size(), 1u);
  EXPECT_EQ(short_path->bottleneck, 1);
}

TEST(ShortestMaxBottleneck, BannedAndTrivial) {
  const auto net = diamond_network();
  const Flow zero = Flow::zero(net);
  const ResidualView view(net, zero);
  const auto same = shortest_max_bottleneck_path(view, 2, 2);
  ASSERT_TRUE(same);
  EXPECT_TRUE(same->arcs.empty());
  EXPECT_EQ(same->bottleneck, kUnbounded);

  const std::vector<char> banned{0, 1, 1, 0};
  EXPECT_FALSE(shortest_max_bottleneck_path(view, 0, 3, banned));
}

TEST(ScoreHeap, OrderAndLazyDeletion) {
  ScoreHeap heap(EdgeScores{{0.5, 0.9, 0.5, 0.1}});
  heap.fill([](EdgeId) { return true; });
  EXPECT_EQ(heap.size(), 4u);
  heap.remove(1);
  heap.remove(1);
  EXPECT_FALSE(heap.contains(1));
  EXPECT_EQ(heap.size(), 3u);
  EXPECT_EQ(heap.pop(), 0);  // tie on 0.5 goes to the smaller id
  heap.insert(1);
  heap.insert(1);
  EXPECT_EQ(heap.size(), 3u);
  EXPECT_EQ(heap.pop(), 1);
  EXPECT_EQ(heap.pop(), 2);
  EXPECT_EQ(heap.pop(), 3);
  EXPECT_FALSE(heap.pop());
  EXPECT_TRUE(heap.empty());
}

TEST(Guided, DiamondWithOracleScores) {
  const auto net = diamond_network();
  const auto scores = oracle_scores(net);
  std::vector<EdgeId> pivots;
  const auto result = guided_ford_fulkerson(net, Flow::zero(net), scores,
                                            [&](const AugmentingPath& p, const Flow& before) {
                                              EXPECT_TRUE(valid_augmenting_path(net, before, p));
                                              if (p.pivot()) pivots.push_back(*p.pivot());
                                            });
  EXPECT_EQ(result.stats.total_flow, 5);
  ASSERT_FALSE(pivots.empty());
  EXPECT_EQ(pivots.front(), 0);  // s->a, capacity 3, the widest cut edge
}

TEST(Guided, RejectsBadScores) {
  const auto net = diamond_network();
  EXPECT_THROW(guided_ford_fulkerson(net, Flow::zero(net), EdgeScores{{1, 1}}), ContractError);
  EXPECT_THROW(guided_ford_fulkerson(net, Flow::zero(net), EdgeScores{{1, 1, 1, 1, 2}}),
               ContractError);
}

TEST(Guided, PivotIntoSourceIsNeverUsed) {
  // Edge 2 -> 0 scores highest but enters the source.
  const auto net = FlowNetwork::build(3, {{0, 1, 2}, {1, 2, 2}, {2, 0, 5}}, 0, 2);
  std::vector<EdgeId> pivots;
  const auto result = guided_ford_fulkerson(
      net, Flow::zero(net), EdgeScores{{0.2, 0.1, 1.0}},
      [&](const AugmentingPath& p, const Flow&) {
        if (p.pivot()) pivots.push_back(*p.pivot());
      });
  EXPECT_EQ(result.stats.total_flow, 2);
  EXPECT_EQ(pivots, (std::vector<EdgeId>{0}));
}

// Property: adjusted Edmonds-Karp always augments along a shortest path of
// maximum bottleneck, checked against exhaustive enumeration.
TEST(AdjustedProperty, TieBreakLaw) {
  std::mt19937_64 rng(404);
  int paths = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const auto net = oracle::random_multigraph(rng, 8, 18, 6, 10);
    const auto result = adjusted_edmonds_karp(
        net, Flow::zero(net), [&](const AugmentingPath& p, const Flow& before) {
          ++paths;
          ASSERT_TRUE(valid_augmenting_path(net, before, p));
          const auto census = oracle::enumerate_residual_paths(net, before, net.source(), net.sink());
          ASSERT_EQ(static_cast<int>(p.arcs.size()), census.shortest);
          ASSERT_EQ(p.bottleneck, census.widest_shortest);
        });
    ASSERT_EQ(result.stats.total_flow, oracle::brute_force_min_cut(net));
  }
  EXPECT_GT(paths, 100);
}

// Property: guided search is optimal for arbitrary scores and every
// augmentation is a valid vertex-simple path.
TEST(GuidedProperty, OptimalForAnyScores) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const auto net = oracle::random_multigraph(rng);
    const auto scores = trial % 2 ? random_scores(net, rng) : oracle_scores(net);
    std::int64_t observed = 0;
    const auto result = guided_ford_fulkerson(net, Flow::zero(net), scores,
                                              [&](const AugmentingPath& p, const Flow& before) {
                                                ++observed;
                                                ASSERT_TRUE(valid_augmenting_path(net, before, p));
                                                if (p.pivot_position) {
                                                  const auto& arc = p.arcs[*p.pivot_position];
                                                  ASSERT_EQ(arc.direction, ArcDirection::kForward);
                                                }
                                              });
    ASSERT_EQ(result.stats.total_flow, oracle::brute_force_min_cut(net)) << "trial " << trial;
    ASSERT_EQ(result.stats.augmentations, observed);
    ASSERT_LE(result.stats.fallback_augmentations, result.stats.augmentations);
  }
}

TEST(GuidedProperty, FirstPivotIsWidestCutEdge) {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 200; ++trial) {
    const auto net = oracle::random_multigraph(rng);
    const auto reference = ford_fulkerson(net, Flow::zero(net), PathStrategy::kBfs);
    if (reference.stats.total_flow == 0) continue;
    const auto cut = min_cut(net, reference.flow);
    Capacity widest = 0;
    for (EdgeId e : cut.cut_edges) widest = std::max(widest, net.edge(e).capacity);

    std::optional<EdgeId> first;
    bool first_seen = false;
    guided_ford_fulkerson(net, Flow::zero(net), oracle_scores(net, cut),
                          [&](const AugmentingPath& p, const Flow&) {
                            if (first_seen) return;
                            first_seen = true;
                            first = p.pivot();
                          });
    ASSERT_TRUE(first) << "trial " << trial << ": first augmentation had no pivot";
    ASSERT_TRUE(cut.contains(net.edge(*first).tail) && !cut.contains(net.edge(*first).head));
    ASSERT_EQ(net.edge(*first).capacity, widest) << "trial " << trial;
  }
}

TEST(Combined, WarmStartThenGuided) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-2.0, 12.0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto net = oracle::random_multigraph(rng);
    std::vector<double> raw;
    for (EdgeId e = 0; e < net.edge_count(); ++e) raw.push_back(u(rng));
    const auto result = combined_ford_fulkerson(
        net, raw, [](const FlowNetwork& g, const Flow&) { return oracle_scores(g); });
    ASSERT_EQ(result.stats.total_flow, oracle::brute_force_min_cut(net));
    ASSERT_TRUE(is_feasible(net, result.flow));
  }
}

}  // namespace
