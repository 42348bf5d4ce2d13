#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "flowpred/network.hpp"
#include "flowpred/scores.hpp"

namespace flowpred {

template <typename Scalar>
using VectorT = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixT = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// y = W x + b with W of shape rows x cols.
template <typename Scalar>
struct DenseLayer {
  MatrixT<Scalar> weights;
  VectorT<Scalar> bias;

  Eigen::Index rows() const { return weights.rows(); }
  Eigen::Index cols() const { return weights.cols(); }
};

/// Feed-forward stack with ReLU between layers and a linear final layer.
template <typename Scalar>
struct Mlp {
  std::vector<DenseLayer<Scalar>> layers;

  Eigen::Index input_dim() const { return layers.empty() ? 0 : layers.front().cols(); }
  Eigen::Index output_dim() const { return layers.empty() ? 0 : layers.back().rows(); }

  template <typename Derived>
  VectorT<Scalar> operator()(const Eigen::MatrixBase<Derived>& x) const {
    VectorT<Scalar> h = x;
    for (std::size_t i = 0; i < layers.size(); ++i) {
      h = layers[i].weights * h + layers[i].bias;
      if (i + 1 < layers.size()) h = h.cwiseMax(Scalar(0));
    }
    return h;
  }
};

/// Node inputs x_v: (terminal flag: +1 source / -1 sink / 0, total degree
/// divided by the largest total degree).
inline constexpr int kMpgnnNodeInputs = 2;
/// Edge inputs e_uv: (residual, capacity, flow), each divided by the largest
/// capacity in the network.
inline constexpr int kMpgnnEdgeInputs = 3;

/// Message-passing edge scorer parameters.
///
/// Round t (synchronous over all vertices and edges, h^(0)_v = x_v zero-padded
/// to hidden_dim, h^(0)_uv = 0):
///   m_uv    = phi_m([h_u | h_v | h_uv | e_uv])              (3H + E -> H)
///   h_v'    = phi_u([h_v | sum over edges (u,v) of m_uv])   (2H -> H)
///   h_uv'   = phi_e([h_uv | h_u | h_v | e_uv])              (3H + E -> H)
/// Score after `rounds` rounds: sigmoid(head([h_u | h_v | h_uv | e_uv])).
template <typename Scalar>
struct MpgnnWeightsT {
  int node_in_dim = kMpgnnNodeInputs;
  int edge_in_dim = kMpgnnEdgeInputs;
  int hidden_dim = 0;
  int rounds = 1;
  Mlp<Scalar> phi_m;
  Mlp<Scalar> phi_u;
  Mlp<Scalar> phi_e;
  Mlp<Scalar> head;

  /// Throws ShapeError naming the offending layer(s).
  void validate() const;
};

using MpgnnWeights = MpgnnWeightsT<double>;

/// All-zero parameters with one hidden layer of width `hidden_dim` per MLP.
MpgnnWeights zero_mpgnn_weights(int hidden_dim, int rounds);

MatrixT<double> mpgnn_node_inputs(const FlowNetwork& net);
MatrixT<double> mpgnn_edge_inputs(const FlowNetwork& net, const Flow& flow);

EdgeScores mpgnn_forward(const MpgnnWeights& weights, const FlowNetwork& net, const Flow& flow);

/// JSON schema: node_in_dim, edge_in_dim, hidden_dim, rounds, and phi_m,
/// phi_u, phi_e, head as lists of {rows, cols, weights (row-major), bias}.
/// Missing keys raise ParseError; inconsistent shapes raise ShapeError.
MpgnnWeights weights_from_json(const nlohmann::json& doc);
nlohmann::json weights_to_json(const MpgnnWeights& weights);
MpgnnWeights load_weights(const std::filesystem::path& path);
void save_weights(const std::filesystem::path& path, const MpgnnWeights& weights);

}  // namespace flowpred
