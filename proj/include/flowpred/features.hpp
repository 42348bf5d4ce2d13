#pragma once

#include <Eigen/Dense>

#include "flowpred/network.hpp"

namespace flowpred {

/// Slots of the per-edge feature vector phi(G, e) for e = (u, v), all
/// measured on the residual graph of (network, flow).
enum FeatureSlot : int {
  kSourceDistance = 0,  // BFS hops s -> u
  kSinkDistance,        // BFS hops v -> t
  kOutDegree,           // out-degree of u in G
  kInDegree,            // in-degree of v in G
  kLiveOutNeighbors,    // distinct w with an edge u -> w of positive residual
  kLiveInNeighbors,     // distinct w with an edge w -> v of positive residual
  kCapacity,            // c(e)
  kFeatureDim
};

template <typename Scalar>
using FeatureVectorT = Eigen::Matrix<Scalar, kFeatureDim, 1>;
template <typename Scalar>
using FeatureMatrixT = Eigen::Matrix<Scalar, Eigen::Dynamic, kFeatureDim, Eigen::RowMajor>;

using FeatureVector = FeatureVectorT<double>;
using FeatureMatrix = FeatureMatrixT<double>;

/// Unreachable distances are encoded as vertex_count.
FeatureVector edge_features(const FlowNetwork& net, const Flow& flow, EdgeId edge);

/// One row per edge, in edge id order. Shares the two BFS passes across rows.
FeatureMatrix edge_feature_matrix(const FlowNetwork& net, const Flow& flow);

}  // namespace flowpred
