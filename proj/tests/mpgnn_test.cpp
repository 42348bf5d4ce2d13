#include <gtest/gtest.h>

#include <fstream>
#include <random>

#include "flowpred/error.hpp"
#include "flowpred/generators.hpp"
#include "flowpred/mpgnn.hpp"
#include "mpgnn_oracle.hpp"
#include "test_support.hpp"

using namespace flowpred;

namespace {

double relative_error(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

TEST(MpgnnInputs, MatchHandDerivedValues) {
  for (const auto& hand : {oracle::mpgnn_path_instance(), oracle::mpgnn_hand_instance()}) {
    const auto x = mpgnn_node_inputs(hand.net);
    ASSERT_EQ(x.rows(), kMpgnnNodeInputs);
    ASSERT_EQ(x.cols(), 3);
    for (int v = 0; v < 3; ++v) {
      for (int k = 0; k < kMpgnnNodeInputs; ++k) EXPECT_DOUBLE_EQ(x(k, v), hand.x[v][k]);
    }
    const auto e = mpgnn_edge_inputs(hand.net, hand.flow);
    ASSERT_EQ(e.rows(), kMpgnnEdgeInputs);
    for (std::size_t id = 0; id < hand.e.size(); ++id) {
      for (int k = 0; k < kMpgnnEdgeInputs; ++k) {
        EXPECT_DOUBLE_EQ(e(k, static_cast<Eigen::Index>(id)), hand.e[id][k]);
      }
    }
  }
}

TEST(MpgnnForward, MatchesLoopOracle) {
  for (const auto& hand : {oracle::mpgnn_path_instance(), oracle::mpgnn_hand_instance()}) {
    for (int rounds : {1, 2, 3}) {
      const auto doc = oracle::mpgnn_hand_weights(rounds);
      const auto want = oracle::mpgnn_hand_scores(hand, doc);
      const auto got = mpgnn_forward(weights_from_json(doc), hand.net, hand.flow);
      ASSERT_EQ(got.size(), want.size());
      for (std::size_t i = 0; i < want.size(); ++i) {
        EXPECT_LT(relative_error(got.values[i], want[i]), 1e-9)
            << "rounds " << rounds << " edge " << i << ": " << got.values[i] << " vs " << want[i];
      }
    }
  }
}

TEST(MpgnnForward, ZeroWeightsGiveOneHalf) {
  const auto net = random_network(9, 20, 10, 4);
  const auto scores = mpgnn_forward(zero_mpgnn_weights(5, 3), net, Flow::zero(net));
  ASSERT_EQ(scores.size(), 20u);
  for (double p : scores.values) EXPECT_EQ(p, 0.5);
}

TEST(MpgnnJson, RoundTripPreservesForward) {
  const auto weights = weights_from_json(oracle::mpgnn_hand_weights(2));
  const auto path = oracle::scratch_dir("mpgnn") / "w.json";
  save_weights(path, weights);
  const auto loaded = load_weights(path);
  const auto net = oracle::mpgnn_hand_instance().net;
  EXPECT_EQ(mpgnn_forward(loaded, net, Flow::zero(net)),
            mpgnn_forward(weights, net, Flow::zero(net)));
  EXPECT_EQ(weights_to_json(loaded), weights_to_json(weights));
}

TEST(MpgnnJson, MissingKeyIsParseError) {
  auto doc = oracle::mpgnn_hand_weights(1);
  doc.erase("rounds");
  try {
    weights_from_json(doc);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("weights schema error"), std::string::npos);
  }
  const auto path = oracle::scratch_dir("mpgnn_bad") / "w.json";
  std::ofstream(path) << "{ not json";
  EXPECT_THROW(load_weights(path), ParseError);
}

std::string shape_error(const nlohmann::json& doc) {
  try {
    weights_from_json(doc);
  } catch (const ShapeError& e) {
    return e.what();
  }
  return "";
}

TEST(MpgnnJson, ShapeErrorsNameTheLayer) {
  auto doc = oracle::mpgnn_hand_weights(1);
  doc["phi_m"][1]["cols"] = 2;
  doc["phi_m"][1]["weights"] = std::vector<double>(4, 0.0);
  EXPECT_NE(shape_error(doc).find("phi_m[1]"), std::string::npos) << shape_error(doc);

  doc = oracle::mpgnn_hand_weights(1);
  doc["head"][1]["bias"] = std::vector<double>{0.0, 0.0};
  EXPECT_NE(shape_error(doc).find("head[1]"), std::string::npos) << shape_error(doc);

  doc = oracle::mpgnn_hand_weights(1);
  doc["phi_e"][0]["weights"] = std::vector<double>{1.0};
  EXPECT_NE(shape_error(doc).find("phi_e[0]"), std::string::npos) << shape_error(doc);

  doc = oracle::mpgnn_hand_weights(1);
  doc["hidden_dim"] = 1;
  EXPECT_FALSE(shape_error(doc).empty());

  doc = oracle::mpgnn_hand_weights(1);
  doc["edge_in_dim"] = 4;
  EXPECT_FALSE(shape_error(doc).empty());
}

TEST(MpgnnForward, FlowSizeMismatch) {
  const auto net = oracle::mpgnn_hand_instance().net;
  EXPECT_THROW(mpgnn_forward(zero_mpgnn_weights(2, 1), net, Flow{{1}}), ContractError);
}

}  // namespace
