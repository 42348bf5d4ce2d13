#include "flowpred/linear_model.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "flowpred/error.hpp"
#include "flowpred/predictors.hpp"

namespace flowpred {
namespace {

Eigen::ArrayXd sigmoid(const Eigen::ArrayXd& z) { return 1.0 / (1.0 + (-z).exp()); }

double mean_log_loss(const Eigen::ArrayXd& p, const Eigen::ArrayXd& y) {
  constexpr double kEps = 1e-12;
  const Eigen::ArrayXd clipped = p.max(kEps).min(1.0 - kEps);
  return -(y * clipped.log() + (1.0 - y) * (1.0 - clipped).log()).mean();
}

void check_shape(const LinearModel& model) {
  if (model.weights.size() != kFeatureDim || model.mean.size() != kFeatureDim ||
      model.scale.size() != kFeatureDim) {
    throw ShapeError("linear model has " + std::to_string(model.weights.size()) +
                     " weights, feature extractor produces " + std::to_string(kFeatureDim));
  }
}

Eigen::MatrixXd normalized(const LinearModel& model, const FeatureMatrix& phi) {
  return (phi.rowwise() - model.mean.transpose()).array().rowwise() /
         model.scale.transpose().array();
}

}  // namespace

LinearModel train_linear_scorer(std::span<const FlowNetwork> networks, int epochs,
                                double learning_rate) {
  if (networks.empty()) throw ContractError("empty training set");
  if (epochs < 0) throw ContractError("epochs must be non-negative");

  Eigen::Index rows = 0;
  for (const auto& net : networks) rows += net.edge_count();
  FeatureMatrix phi(rows, static_cast<Eigen::Index>(kFeatureDim));
  Eigen::ArrayXd labels(rows);
  Eigen::Index offset = 0;
  for (const auto& net : networks) {
    const auto m = net.edge_count();
    if (m == 0) continue;
    phi.middleRows(offset, m) = edge_feature_matrix(net, Flow::zero(net));
    const auto membership = cut_membership(net);
    for (EdgeId e = 0; e < m; ++e) labels[offset + e] = membership[static_cast<std::size_t>(e)];
    offset += m;
  }

  LinearModel model;
  if (rows == 0) return model;
  model.mean = phi.colwise().mean().transpose();
  const Eigen::MatrixXd centered = phi.rowwise() - model.mean.transpose();
  model.scale = (centered.array().square().colwise().mean().sqrt()).transpose().matrix();
  for (Eigen::Index k = 0; k < model.scale.size(); ++k) {
    if (!(model.scale[k] > 1e-12)) model.scale[k] = 1.0;
  }
  const Eigen::MatrixXd x = normalized(model, phi);
  const auto n = static_cast<double>(rows);

  auto predict = [&] { return sigmoid((x * model.weights).array() + model.bias); };
  Eigen::ArrayXd p = predict();
  model.loss_history.push_back(mean_log_loss(p, labels));
  for (int epoch = 0; epoch < epochs; ++epoch) {
    const Eigen::VectorXd residual = (p - labels).matrix();
    model.weights -= learning_rate * (x.transpose() * residual) / n;
    model.bias -= learning_rate * residual.sum() / n;
    p = predict();
    model.loss_history.push_back(mean_log_loss(p, labels));
  }
  return model;
}

EdgeScores linear_scores(const LinearModel& model, const FlowNetwork& net, const Flow& flow) {
  check_shape(model);
  EdgeScores scores;
  if (net.edge_count() == 0) return scores;
  const Eigen::MatrixXd x = normalized(model, edge_feature_matrix(net, flow));
  const Eigen::ArrayXd z = (x * model.weights).array() + model.bias;
  for (Eigen::Index i = 0; i < z.size(); ++i) scores.values.push_back(open_sigmoid(z[i]));
  return scores;
}

void save_linear_model(const std::filesystem::path& path, const LinearModel& model) {
  auto as_list = [](const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); };
  nlohmann::json doc{{"weights", as_list(model.weights)},
                     {"bias", model.bias},
                     {"mean", as_list(model.mean)},
                     {"scale", as_list(model.scale)},
                     {"loss_history", model.loss_history}};
  std::ofstream out(path);
  if (!out) throw ContractError("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

LinearModel load_linear_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  LinearModel model;
  try {
    const auto doc = nlohmann::json::parse(in);
    auto vec = [&](const char* key) {
      const auto values = doc.at(key).get<std::vector<double>>();
      return Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(values.data(),
                                                               static_cast<Eigen::Index>(values.size())));
    };
    model.weights = vec("weights");
    model.mean = vec("mean");
    model.scale = vec("scale");
    model.bias = doc.at("bias").get<double>();
    if (doc.contains("loss_history")) {
      model.loss_history = doc.at("loss_history").get<std::vector<double>>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("linear model " + path.string() + ": " + e.what());
  }
  check_shape(model);
  return model;
}

}  // namespace flowpred
