#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "flowpred/network.hpp"

namespace flowpred {

/// Total map EdgeId -> priority in [0, 1].
struct EdgeScores {
  std::vector<double> values;

  double operator[](EdgeId e) const { return values[static_cast<std::size_t>(e)]; }
  std::size_t size() const { return values.size(); }

  bool operator==(const EdgeScores&) const = default;
};

/// Throws ContractError unless `scores` covers exactly the network's edges
/// with finite values in [0, 1].
void validate_scores(const FlowNetwork& net, const EdgeScores& scores);

/// Logistic function kept strictly inside (0, 1) when the logit saturates.
inline double open_sigmoid(double z) {
  const double p = 1.0 / (1.0 + std::exp(-z));
  return std::clamp(p, std::numeric_limits<double>::min(), std::nextafter(1.0, 0.0));
}

}  // namespace flowpred
