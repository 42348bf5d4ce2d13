#include "flowpred/mpgnn.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "flowpred/error.hpp"

namespace flowpred {
namespace {

std::string layer_name(const char* mlp, std::size_t index) {
  return std::string(mlp) + "[" + std::to_string(index) + "]";
}

template <typename Scalar>
void check_mlp(const Mlp<Scalar>& mlp, const char* name, Eigen::Index in, Eigen::Index out,
               const char* consumer) {
  if (mlp.layers.empty()) throw ShapeError(std::string(name) + " has no layers");
  for (std::size_t i = 0; i < mlp.layers.size(); ++i) {
    const auto& layer = mlp.layers[i];
    if (layer.bias.size() != layer.rows()) {
      throw ShapeError(layer_name(name, i) + " bias has " + std::to_string(layer.bias.size()) +
                       " entries for " + std::to_string(layer.rows()) + " rows");
    }
    if (i > 0 && mlp.layers[i - 1].rows() != layer.cols()) {
      throw ShapeError(layer_name(name, i - 1) + " outputs " +
                       std::to_string(mlp.layers[i - 1].rows()) + " values but " +
                       layer_name(name, i) + " takes " + std::to_string(layer.cols()));
    }
  }
  if (mlp.input_dim() != in) {
    throw ShapeError(layer_name(name, 0) + " takes " + std::to_string(mlp.input_dim()) +
                     " inputs, expected " + std::to_string(in) + " from hidden_dim/edge_in_dim");
  }
  if (mlp.output_dim() != out) {
    throw ShapeError(layer_name(name, mlp.layers.size() - 1) + " outputs " +
                     std::to_string(mlp.output_dim()) + " values but " + consumer + " expects " +
                     std::to_string(out));
  }
}

template <typename Scalar>
VectorT<Scalar> concat(std::initializer_list<VectorT<Scalar>> parts) {
  Eigen::Index size = 0;
  for (const auto& p : parts) size += p.size();
  VectorT<Scalar> out(size);
  Eigen::Index at = 0;
  for (const auto& p : parts) {
    out.segment(at, p.size()) = p;
    at += p.size();
  }
  return out;
}

DenseLayer<double> zero_layer(Eigen::Index rows, Eigen::Index cols) {
  return DenseLayer<double>{MatrixT<double>::Zero(rows, cols), VectorT<double>::Zero(rows)};
}

Mlp<double> mlp_from_json(const nlohmann::json& doc, const char* name) {
  Mlp<double> mlp;
  const auto& layers = doc.at(name);
  if (!layers.is_array()) throw ParseError(std::string(name) + " must be a list of layers");
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const auto& layer = layers[i];
    const auto rows = layer.at("rows").get<Eigen::Index>();
    const auto cols = layer.at("cols").get<Eigen::Index>();
    const auto values = layer.at("weights").get<std::vector<double>>();
    const auto bias = layer.at("bias").get<std::vector<double>>();
    if (rows <= 0 || cols <= 0 || static_cast<Eigen::Index>(values.size()) != rows * cols) {
      throw ShapeError(layer_name(name, i) + " declares " + std::to_string(rows) + "x" +
                       std::to_string(cols) + " but holds " + std::to_string(values.size()) +
                       " weights");
    }
    DenseLayer<double> dense;
    dense.weights = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                                   Eigen::RowMajor>>(values.data(), rows, cols);
    dense.bias = Eigen::Map<const VectorT<double>>(bias.data(), static_cast<Eigen::Index>(bias.size()));
    mlp.layers.push_back(std::move(dense));
  }
  return mlp;
}

nlohmann::json mlp_to_json(const Mlp<double>& mlp) {
  auto layers = nlohmann::json::array();
  for (const auto& layer : mlp.layers) {
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(layer.weights.size()));
    for (Eigen::Index r = 0; r < layer.rows(); ++r) {
      for (Eigen::Index c = 0; c < layer.cols(); ++c) values.push_back(layer.weights(r, c));
    }
    layers.push_back({{"rows", layer.rows()},
                      {"cols", layer.cols()},
                      {"weights", values},
                      {"bias", std::vector<double>(layer.bias.data(),
                                                   layer.bias.data() + layer.bias.size())}});
  }
  return layers;
}

}  // namespace

template <typename Scalar>
void MpgnnWeightsT<Scalar>::validate() const {
  if (node_in_dim != kMpgnnNodeInputs) {
    throw ShapeError("node_in_dim must be " + std::to_string(kMpgnnNodeInputs) + ", got " +
                     std::to_string(node_in_dim));
  }
  if (edge_in_dim != kMpgnnEdgeInputs) {
    throw ShapeError("edge_in_dim must be " + std::to_string(kMpgnnEdgeInputs) + ", got " +
                     std::to_string(edge_in_dim));
  }
  if (hidden_dim < node_in_dim) {
    throw ShapeError("hidden_dim " + std::to_string(hidden_dim) + " smaller than node_in_dim");
  }
  if (rounds < 1) throw ShapeError("rounds must be >= 1");
  const Eigen::Index h = hidden_dim;
  const Eigen::Index e = edge_in_dim;
  check_mlp(phi_m, "phi_m", 3 * h + e, h, "phi_u[0] (message width = hidden_dim)");
  check_mlp(phi_u, "phi_u", 2 * h, h, "the next round (hidden_dim)");
  check_mlp(phi_e, "phi_e", 3 * h + e, h, "the next round (hidden_dim)");
  check_mlp(head, "head", 3 * h + e, 1, "the sigmoid (one logit)");
}

template struct MpgnnWeightsT<double>;

MpgnnWeights zero_mpgnn_weights(int hidden_dim, int rounds) {
  MpgnnWeights w;
  w.hidden_dim = hidden_dim;
  w.rounds = rounds;
  const Eigen::Index h = hidden_dim;
  const Eigen::Index wide = 3 * h + w.edge_in_dim;
  w.phi_m.layers = {zero_layer(h, wide), zero_layer(h, h)};
  w.phi_u.layers = {zero_layer(h, 2 * h), zero_layer(h, h)};
  w.phi_e.layers = {zero_layer(h, wide), zero_layer(h, h)};
  w.head.layers = {zero_layer(h, wide), zero_layer(1, h)};
  return w;
}

MatrixT<double> mpgnn_node_inputs(const FlowNetwork& net) {
  const auto n = static_cast<Eigen::Index>(net.vertex_count());
  MatrixT<double> x = MatrixT<double>::Zero(kMpgnnNodeInputs, n);
  std::size_t max_degree = 0;
  for (VertexId v = 0; v < net.vertex_count(); ++v) {
    max_degree = std::max(max_degree, net.incident(v).size());
  }
  for (VertexId v = 0; v < net.vertex_count(); ++v) {
    x(0, v) = v == net.source() ? 1.0 : v == net.sink() ? -1.0 : 0.0;
    x(1, v) = max_degree == 0 ? 0.0
                              : static_cast<double>(net.incident(v).size()) /
                                    static_cast<double>(max_degree);
  }
  return x;
}

MatrixT<double> mpgnn_edge_inputs(const FlowNetwork& net, const Flow& flow) {
  const auto m = static_cast<Eigen::Index>(net.edge_count());
  MatrixT<double> e(kMpgnnEdgeInputs, m);
  Capacity max_cap = 0;
  for (const Edge& edge : net.edges()) max_cap = std::max(max_cap, edge.capacity);
  const double scale = max_cap > 0 ? static_cast<double>(max_cap) : 1.0;
  for (EdgeId id = 0; id < net.edge_count(); ++id) {
    const auto c = static_cast<double>(net.edge(id).capacity);
    const auto f = static_cast<double>(flow[id]);
    e(0, id) = (c - f) / scale;
    e(1, id) = c / scale;
    e(2, id) = f / scale;
  }
  return e;
}

EdgeScores mpgnn_forward(const MpgnnWeights& weights, const FlowNetwork& net, const Flow& flow) {
  weights.validate();
  if (flow.values.size() != static_cast<std::size_t>(net.edge_count())) {
    throw ContractError("flow does not match network for mpgnn_forward");
  }
  const Eigen::Index h = weights.hidden_dim;
  const auto n = static_cast<Eigen::Index>(net.vertex_count());
  const auto m = static_cast<Eigen::Index>(net.edge_count());
  const MatrixT<double> x = mpgnn_node_inputs(net);
  const MatrixT<double> e = mpgnn_edge_inputs(net, flow);

  // Columns are per-vertex / per-edge embeddings.
  MatrixT<double> node = MatrixT<double>::Zero(h, n);
  node.topRows(weights.node_in_dim) = x;
  MatrixT<double> edge = MatrixT<double>::Zero(h, m);

  for (int round = 0; round < weights.rounds; ++round) {
    MatrixT<double> inbox = MatrixT<double>::Zero(h, n);
    MatrixT<double> next_edge(h, m);
    for (EdgeId id = 0; id < net.edge_count(); ++id) {
      const Edge& uv = net.edge(id);
      const VectorT<double> hu = node.col(uv.tail);
      const VectorT<double> hv = node.col(uv.head);
      const VectorT<double> huv = edge.col(id);
      const VectorT<double> euv = e.col(id);
      inbox.col(uv.head) += weights.phi_m(concat<double>({hu, hv, huv, euv}));
      next_edge.col(id) = weights.phi_e(concat<double>({huv, hu, hv, euv}));
    }
    MatrixT<double> next_node(h, n);
    for (Eigen::Index v = 0; v < n; ++v) {
      next_node.col(v) =
          weights.phi_u(concat<double>({VectorT<double>(node.col(v)), VectorT<double>(inbox.col(v))}));
    }
    node = std::move(next_node);
    edge = std::move(next_edge);
  }

  EdgeScores scores;
  scores.values.reserve(static_cast<std::size_t>(m));
  for (EdgeId id = 0; id < net.edge_count(); ++id) {
    const Edge& uv = net.edge(id);
    const VectorT<double> logit = weights.head(concat<double>(
        {VectorT<double>(node.col(uv.tail)), VectorT<double>(node.col(uv.head)),
         VectorT<double>(edge.col(id)), VectorT<double>(e.col(id))}));
    scores.values.push_back(open_sigmoid(logit[0]));
  }
  return scores;
}

MpgnnWeights weights_from_json(const nlohmann::json& doc) {
  MpgnnWeights w;
  try {
    w.node_in_dim = doc.at("node_in_dim").get<int>();
    w.edge_in_dim = doc.at("edge_in_dim").get<int>();
    w.hidden_dim = doc.at("hidden_dim").get<int>();
    w.rounds = doc.at("rounds").get<int>();
    w.phi_m = mlp_from_json(doc, "phi_m");
    w.phi_u = mlp_from_json(doc, "phi_u");
    w.phi_e = mlp_from_json(doc, "phi_e");
    w.head = mlp_from_json(doc, "head");
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("weights schema error: ") + e.what());
  }
  w.validate();
  return w;
}

nlohmann::json weights_to_json(const MpgnnWeights& weights) {
  return nlohmann::json{{"node_in_dim", weights.node_in_dim},
                        {"edge_in_dim", weights.edge_in_dim},
                        {"hidden_dim", weights.hidden_dim},
                        {"rounds", weights.rounds},
                        {"phi_m", mlp_to_json(weights.phi_m)},
                        {"phi_u", mlp_to_json(weights.phi_u)},
                        {"phi_e", mlp_to_json(weights.phi_e)},
                        {"head", mlp_to_json(weights.head)}};
}

MpgnnWeights load_weights(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("weights file " + path.string() + ": " + e.what());
  }
  return weights_from_json(doc);
}

void save_weights(const std::filesystem::path& path, const MpgnnWeights& weights) {
  std::ofstream out(path);
  if (!out) throw ContractError("cannot write " + path.string());
  out << weights_to_json(weights).dump(2) << '\n';
}

}  // namespace flowpred
