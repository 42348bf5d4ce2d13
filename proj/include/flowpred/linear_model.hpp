#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "flowpred/features.hpp"
#include "flowpred/scores.hpp"

namespace flowpred {

/// Logistic scorer p(e) = sigmoid(w . normalize(phi(G, e)) + bias).
struct LinearModel {
  Eigen::VectorXd weights = Eigen::VectorXd::Zero(kFeatureDim);
  double bias = 0.0;
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(kFeatureDim);
  Eigen::VectorXd scale = Eigen::VectorXd::Ones(kFeatureDim);
  /// Mean cross-entropy before the first update and after every epoch.
  std::vector<double> loss_history;

  double final_loss() const { return loss_history.empty() ? 0.0 : loss_history.back(); }
};

/// Full-batch gradient descent on mean logistic loss. Labels are min-cut
/// membership from the exact solver; features are taken at zero flow and
/// standardized with statistics over the whole training set.
LinearModel train_linear_scorer(std::span<const FlowNetwork> networks, int epochs,
                                double learning_rate);

/// Throws ShapeError if the model does not have kFeatureDim slots.
EdgeScores linear_scores(const LinearModel& model, const FlowNetwork& net, const Flow& flow);

void save_linear_model(const std::filesystem::path& path, const LinearModel& model);
LinearModel load_linear_model(const std::filesystem::path& path);

}  // namespace flowpred
