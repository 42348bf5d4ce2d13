#pragma once

#include <cstdint>
#include <vector>

#include "flowpred/network.hpp"
#include "flowpred/scores.hpp"
#include "flowpred/solve.hpp"

namespace flowpred {

/// Exact scores from a solved instance. Min-cut edges score c(e) / c_max_cut,
/// so the largest-capacity cut edge scores 1. Every other edge scores
/// 0.5 * (smallest positive cut score) * c(e) / c_max, strictly below all
/// positive-capacity cut edges. Uses the source-minimal cut from min_cut.
EdgeScores oracle_scores(const FlowNetwork& net);

/// Same as oracle_scores but with a precomputed minimum cut.
EdgeScores oracle_scores(const FlowNetwork& net, const CutResult& cut);

/// 1 for min-cut edges, 0 otherwise (source-minimal cut).
std::vector<int> cut_membership(const FlowNetwork& net);

/// (1 - noise) * p + noise * U(0,1), clamped to [0,1]. Deterministic in
/// `seed`; noise 0 returns the input unchanged.
EdgeScores perturb_scores(const EdgeScores& scores, double noise, std::uint64_t seed);

}  // namespace flowpred
