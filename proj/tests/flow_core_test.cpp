#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "flowpred/error.hpp"
#include "flowpred/generators.hpp"
#include "flowpred/network.hpp"
#include "flowpred/residual.hpp"
#include "flowpred/solve.hpp"
#include "flowpred/text_io.hpp"
#include "test_support.hpp"

using namespace flowpred;

namespace {

const PathStrategy kColdStrategies[] = {PathStrategy::kDfs, PathStrategy::kBfs,
                                        PathStrategy::kAdjustedBfs};

TEST(FlowNetwork, RejectsMalformedInput) {
  EXPECT_THROW(FlowNetwork::build(1, {}, 0, 0), ContractError);
  EXPECT_THROW(FlowNetwork::build(3, {}, 0, 0), ContractError);
  EXPECT_THROW(FlowNetwork::build(3, {}, 0, 3), ContractError);
  EXPECT_THROW(FlowNetwork::build(3, {{0, 5, 1}}, 0, 2), ContractError);
  EXPECT_THROW(FlowNetwork::build(3, {{1, 1, 1}}, 0, 2), ContractError);
  try {
    FlowNetwork::build(3, {{0, 1, 1}, {1, 2, -4}}, 0, 2);
    FAIL() << "negative capacity accepted";
  } catch (const ContractError& e) {
    EXPECT_NE(std::string(e.what()).find("edge 1"), std::string::npos) << e.what();
  }
}

TEST(FlowNetwork, AdjacencyListsAscendingIds) {
  const auto net = FlowNetwork::build(3, {{0, 1, 1}, {1, 2, 1}, {0, 1, 2}, {2, 1, 3}}, 0, 2);
  const auto inc = net.incident(1);
  EXPECT_EQ(std::vector<EdgeId>(inc.begin(), inc.end()), (std::vector<EdgeId>{0, 1, 2, 3}));
  const auto out = net.out_edges(0);
  EXPECT_EQ(std::vector<EdgeId>(out.begin(), out.end()), (std::vector<EdgeId>{0, 2}));
  const auto in = net.in_edges(1);
  EXPECT_EQ(std::vector<EdgeId>(in.begin(), in.end()), (std::vector<EdgeId>{0, 2, 3}));
}

TEST(Flow, ViolationsReportedInOrder) {
  const auto net = diamond_network();
  Flow flow = Flow::zero(net);
  EXPECT_TRUE(is_feasible(net, flow));
  EXPECT_EQ(flow_value(net, flow), 0);

  flow[1] = 5;  // capacity 2
  auto v = find_violation(net, flow);
  ASSERT_TRUE(v);
  EXPECT_EQ(v->kind, ViolationKind::kCapacity);
  EXPECT_EQ(v->index, 1);

  flow = Flow::zero(net);
  flow[0] = 2;  // nothing leaves vertex 1
  v = find_violation(net, flow);
  ASSERT_TRUE(v);
  EXPECT_EQ(v->kind, ViolationKind::kConservation);
  EXPECT_EQ(v->index, 1);
  EXPECT_THROW(flow_value(net, flow), ContractError);

  flow.values.pop_back();
  v = find_violation(net, flow);
  ASSERT_TRUE(v);
  EXPECT_EQ(v->kind, ViolationKind::kSize);
}

TEST(Residual, ArcsAndPush) {
  const auto net = diamond_network();
  Flow flow = Flow::zero(net);
  flow[0] = 2;
  flow[3] = 2;
  const ResidualView view(net, flow);
  EXPECT_EQ(view.residual({0, ArcDirection::kForward}), 1);
  EXPECT_EQ(view.residual({0, ArcDirection::kBackward}), 2);
  EXPECT_EQ(view.tail({0, ArcDirection::kBackward}), 1);

  std::vector<ResidualArc> out;
  const auto scanned = view.for_each_out_arc(1, [&](ResidualArc a) { out.push_back(a); });
  EXPECT_EQ(scanned, 3u);
  // back to s over edge 0, forward over 1->2; 1->3 still has residual 0.
  EXPECT_EQ(out, (std::vector<ResidualArc>{{0, ArcDirection::kBackward},
                                           {2, ArcDirection::kForward}}));

  const std::vector<ResidualArc> path{{1, ArcDirection::kForward}, {2, ArcDirection::kBackward}};
  // s->b forward is fine, but b->a backward over edge 2 needs flow on 1->2.
  EXPECT_EQ(bottleneck(view, path), 0);
  EXPECT_EQ(path_vertices(net, 0, path), (std::vector<VertexId>{0, 2, 1}));

  const std::vector<ResidualArc> aug{{1, ArcDirection::kForward}, {4, ArcDirection::kForward}};
  push_along(net, flow, aug, 2);
  EXPECT_EQ(flow_value(net, flow), 4);
}

TEST(Solve, DiamondAllStrategies) {
  const auto net = diamond_network();
  for (auto strategy : kColdStrategies) {
    const auto result = ford_fulkerson(net, Flow::zero(net), strategy);
    EXPECT_EQ(result.stats.total_flow, 5) << to_string(strategy);
    EXPECT_EQ(flow_value(net, result.flow), 5);
    const auto cut = min_cut(net, result.flow);
    EXPECT_EQ(cut.capacity, 5);
    EXPECT_EQ(cut.source_side, (std::vector<VertexId>{0}));
    EXPECT_EQ(cut.cut_edges, (std::vector<EdgeId>{0, 1}));
  }
}

TEST(Solve, GuidedRequiresScores) {
  const auto net = diamond_network();
  EXPECT_THROW(ford_fulkerson(net, Flow::zero(net), PathStrategy::kGuided), ContractError);
}

TEST(Solve, RejectsInfeasibleInitialFlow) {
  const auto net = diamond_network();
  Flow flow = Flow::zero(net);
  flow[0] = 1;
  EXPECT_THROW(ford_fulkerson(net, flow, PathStrategy::kBfs), ContractError);
}

TEST(Solve, UnreachableSinkGivesZero) {
  const auto net = FlowNetwork::build(4, {{0, 1, 5}, {2, 3, 5}}, 0, 3);
  for (auto strategy : kColdStrategies) {
    const auto result = ford_fulkerson(net, Flow::zero(net), strategy);
    EXPECT_EQ(result.stats.total_flow, 0);
    EXPECT_EQ(result.stats.augmentations, 0);
    EXPECT_EQ(min_cut(net, result.flow).capacity, 0);
  }
}

TEST(Solve, MinCutRejectsNonMaximalFlow) {
  const auto net = diamond_network();
  EXPECT_THROW(min_cut(net, Flow::zero(net)), NotMaximalError);
}

TEST(Solve, ParseStrategyNames) {
  for (auto strategy : {PathStrategy::kDfs, PathStrategy::kBfs, PathStrategy::kAdjustedBfs,
                        PathStrategy::kGuided}) {
    EXPECT_EQ(parse_strategy(to_string(strategy)), strategy);
  }
  EXPECT_THROW(parse_strategy("dinic"), ContractError);
}

TEST(Solve, ObserverSeesEveryAugmentation) {
  const auto net = diamond_network();
  int calls = 0;
  Capacity pushed = 0;
  SolveOptions options{PathStrategy::kBfs, nullptr,
                       [&](const AugmentingPath& p, const Flow&) {
                         ++calls;
                         pushed += p.bottleneck;
                       }};
  const auto result = ford_fulkerson(net, Flow::zero(net), options);
  EXPECT_EQ(calls, result.stats.augmentations);
  EXPECT_EQ(pushed, 5);
}

// Property: every cold strategy matches both brute-force oracles, the result
// is feasible and max-flow equals min-cut.
TEST(SolveProperty, MatchesBruteForceOracles) {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 150; ++trial) {
    const auto net = oracle::random_multigraph(rng);
    const Capacity expected = oracle::brute_force_min_cut(net);
    ASSERT_EQ(oracle::brute_force_max_flow(net), expected);
    for (auto strategy : kColdStrategies) {
      const auto result = ford_fulkerson(net, Flow::zero(net), strategy);
      ASSERT_TRUE(is_feasible(net, result.flow));
      ASSERT_EQ(result.stats.total_flow, expected) << "trial " << trial << " " << to_string(strategy);
      ASSERT_EQ(min_cut(net, result.flow).capacity, expected);
    }
  }
}

TEST(TextIo, NetworkRoundTrip) {
  const auto net = random_network(7, 15, 9, 3);
  std::stringstream buf;
  write_network(buf, net);
  EXPECT_EQ(read_network(buf), net);
}

TEST(TextIo, NetworkCommentsAndErrors) {
  std::istringstream ok("# diamond\n4 2 0 3  # header\n0 1 3\n\n1 3 2 # tail\n");
  const auto net = read_network(ok);
  EXPECT_EQ(net.edge_count(), 2);
  EXPECT_EQ(net.edge(1).capacity, 2);

  std::istringstream short_file("4 3 0 3\n0 1 3\n1 3 2\n");
  EXPECT_THROW(read_network(short_file), ParseError);
  std::istringstream garbage("4 1 0 3\n0 x 3\n");
  try {
    read_network(garbage);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
  std::istringstream bad_edge("4 1 0 3\n0 0 3\n");
  EXPECT_THROW(read_network(bad_edge), ContractError);
}

TEST(TextIo, ScoresMustBeTotal) {
  const auto net = diamond_network();
  std::istringstream ok("0 1\n1 0.5\n2 0\n3 0.25\n4 0.75\n");
  EXPECT_EQ(read_scores(ok, net).values, (std::vector<double>{1, 0.5, 0, 0.25, 0.75}));
  std::istringstream missing("0 1\n1 0.5\n2 0\n3 0.25\n");
  EXPECT_THROW(read_scores(missing, net), ContractError);
  std::istringstream duplicate("0 1\n0 1\n1 0.5\n2 0\n3 0.25\n4 0.75\n");
  EXPECT_THROW(read_scores(duplicate, net), ParseError);
  std::istringstream range("0 1.5\n1 0.5\n2 0\n3 0.25\n4 0.75\n");
  EXPECT_THROW(read_scores(range, net), ContractError);
}

TEST(TextIo, RawFlowDefaultsToZero) {
  const auto net = diamond_network();
  std::istringstream in("3 -1.5\n1 2.7\n");
  EXPECT_EQ(read_raw_flow(in, net), (std::vector<double>{0, 2.7, 0, -1.5, 0}));
  std::istringstream dup("1 1\n1 2\n");
  EXPECT_THROW(read_raw_flow(dup, net), ParseError);
}

TEST(TextIo, FormatDoubleRoundTrips) {
  for (double v : {0.0, 1.0, 0.1, 2.0 / 3.0, 1e-17, 0.5}) {
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
  EXPECT_EQ(format_double(0.5), "0.5");
  EXPECT_EQ(format_double(1.0), "1");
}

}  // namespace
