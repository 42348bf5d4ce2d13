#include <gtest/gtest.h>

#include <random>

#include "flowpred/error.hpp"
#include "flowpred/features.hpp"
#include "flowpred/generators.hpp"
#include "flowpred/linear_model.hpp"
#include "flowpred/predictors.hpp"
#include "test_support.hpp"

using namespace flowpred;

namespace {

TEST(Features, DiamondAtZeroFlow) {
  const auto net = diamond_network();
  const auto phi = edge_feature_matrix(net, Flow::zero(net));
  ASSERT_EQ(phi.rows(), 5);
  // edge 2 = a->b: s->a is 1 hop, b->t is 1 hop.
  EXPECT_EQ(phi(2, kSourceDistance), 1);
  EXPECT_EQ(phi(2, kSinkDistance), 1);
  EXPECT_EQ(phi(2, kOutDegree), 2);
  EXPECT_EQ(phi(2, kInDegree), 2);
  EXPECT_EQ(phi(2, kLiveOutNeighbors), 2);
  EXPECT_EQ(phi(2, kLiveInNeighbors), 2);
  EXPECT_EQ(phi(2, kCapacity), 1);
  EXPECT_EQ(phi(0, kSourceDistance), 0);
  EXPECT_EQ(phi(4, kSinkDistance), 0);
  for (EdgeId e = 0; e < 5; ++e) {
    EXPECT_EQ(edge_features(net, Flow::zero(net), e), phi.row(e).transpose());
  }
}

TEST(Features, SaturationChangesResidualSlots) {
  const auto net = diamond_network();
  const Flow max_flow{{3, 2, 1, 2, 3}};
  const auto phi = edge_feature_matrix(net, max_flow);
  // Nothing leaves s in the residual, so a is unreachable.
  EXPECT_EQ(phi(3, kSourceDistance), 4);
  EXPECT_EQ(phi(2, kLiveOutNeighbors), 0);
  EXPECT_EQ(phi(0, kOutDegree), 2);
}

TEST(Oracle, DiamondScores) {
  const auto net = diamond_network();
  const auto scores = oracle_scores(net);
  EXPECT_DOUBLE_EQ(scores[0], 1.0);
  EXPECT_DOUBLE_EQ(scores[1], 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(scores[2], 0.5 * (2.0 / 3.0) * (1.0 / 3.0));
  EXPECT_DOUBLE_EQ(scores[4], 0.5 * (2.0 / 3.0) * (3.0 / 3.0));
  EXPECT_EQ(cut_membership(net), (std::vector<int>{1, 1, 0, 0, 0}));
}

// Property: cut edges outrank every other edge and the widest cut edge
// scores exactly 1.
TEST(OracleProperty, CutEdgesRankFirst) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const auto net = oracle::random_multigraph(rng);
    const auto scores = oracle_scores(net);
    validate_scores(net, scores);
    const auto labels = cut_membership(net);
    double worst_cut = 2.0;
    double best_other = -1.0;
    bool any_positive_cut = false;
    for (EdgeId e = 0; e < net.edge_count(); ++e) {
      if (labels[static_cast<std::size_t>(e)] && net.edge(e).capacity > 0) {
        worst_cut = std::min(worst_cut, scores[e]);
        any_positive_cut = true;
      } else if (!labels[static_cast<std::size_t>(e)]) {
        best_other = std::max(best_other, scores[e]);
      }
    }
    if (any_positive_cut) {
      ASSERT_LT(best_other, worst_cut) << "trial " << trial;
      ASSERT_DOUBLE_EQ(*std::max_element(scores.values.begin(), scores.values.end()), 1.0);
    }
  }
}

TEST(Perturb, DeterministicAndBounded) {
  const EdgeScores base{{0.0, 0.5, 1.0, 0.25}};
  EXPECT_EQ(perturb_scores(base, 0.0, 3), base);
  const auto a = perturb_scores(base, 0.4, 3);
  EXPECT_EQ(a, perturb_scores(base, 0.4, 3));
  EXPECT_NE(a, perturb_scores(base, 0.4, 4));
  for (std::size_t i = 0; i < base.size(); ++i) {
    EXPECT_GE(a.values[i], 0.6 * base.values[i]);
    EXPECT_LE(a.values[i], 0.6 * base.values[i] + 0.4);
  }
  EXPECT_THROW(perturb_scores(base, 1.5, 1), ContractError);
}

TEST(Linear, LossDecreasesAndScoresAreProbabilities) {
  std::vector<FlowNetwork> training;
  for (std::uint64_t i = 0; i < 10; ++i) training.push_back(random_network(8, 16, 10, 100 + i));
  const auto model = train_linear_scorer(training, 150, 0.1);
  ASSERT_EQ(model.loss_history.size(), 151u);
  EXPECT_NEAR(model.loss_history.front(), std::log(2.0), 1e-12);
  EXPECT_LT(model.final_loss(), model.loss_history.front());
  for (std::size_t i = 1; i < model.loss_history.size(); ++i) {
    EXPECT_LE(model.loss_history[i], model.loss_history[i - 1] + 1e-12);
  }
  const auto net = random_network(8, 16, 10, 999);
  const auto scores = linear_scores(model, net, Flow::zero(net));
  validate_scores(net, scores);
}

TEST(Linear, SaveLoadRoundTrip) {
  std::vector<FlowNetwork> training{random_network(6, 10, 5, 1), random_network(6, 10, 5, 2)};
  const auto model = train_linear_scorer(training, 20, 0.2);
  const auto path = oracle::scratch_dir("linear") / "model.json";
  save_linear_model(path, model);
  const auto loaded = load_linear_model(path);
  EXPECT_EQ(loaded.weights, model.weights);
  EXPECT_EQ(loaded.bias, model.bias);
  EXPECT_EQ(loaded.mean, model.mean);
  EXPECT_EQ(loaded.scale, model.scale);
  EXPECT_EQ(loaded.loss_history, model.loss_history);
}

TEST(Linear, Contracts) {
  EXPECT_THROW(train_linear_scorer({}, 10, 0.1), ContractError);
  LinearModel bad;
  bad.weights = Eigen::VectorXd::Zero(3);
  const auto net = diamond_network();
  EXPECT_THROW(linear_scores(bad, net, Flow::zero(net)), ShapeError);
}

}  // namespace
