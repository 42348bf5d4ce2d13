#include "flowpred/predictors.hpp"

#include <algorithm>
#include <random>

#include "flowpred/error.hpp"

namespace flowpred {

EdgeScores oracle_scores(const FlowNetwork& net) {
  const auto solved = ford_fulkerson(net, Flow::zero(net), PathStrategy::kBfs);
  return oracle_scores(net, min_cut(net, solved.flow));
}

EdgeScores oracle_scores(const FlowNetwork& net, const CutResult& cut) {
  const auto m = static_cast<std::size_t>(net.edge_count());
  EdgeScores scores{std::vector<double>(m, 0.0)};
  if (m == 0) return scores;

  std::vector<char> in_cut(m, 0);
  Capacity max_cut = 0;
  Capacity min_positive_cut = 0;
  for (EdgeId e : cut.cut_edges) {
    in_cut[static_cast<std::size_t>(e)] = 1;
    const Capacity c = net.edge(e).capacity;
    max_cut = std::max(max_cut, c);
    if (c > 0 && (min_positive_cut == 0 || c < min_positive_cut)) min_positive_cut = c;
  }
  Capacity max_any = 0;
  for (const Edge& e : net.edges()) max_any = std::max(max_any, e.capacity);

  const double floor_score =
      min_positive_cut > 0 ? static_cast<double>(min_positive_cut) / static_cast<double>(max_cut) : 1.0;
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    const auto c = static_cast<double>(net.edge(e).capacity);
    double& p = scores.values[static_cast<std::size_t>(e)];
    if (in_cut[static_cast<std::size_t>(e)]) {
      p = max_cut > 0 ? c / static_cast<double>(max_cut) : 1.0;
    } else {
      p = max_any > 0 ? 0.5 * floor_score * c / static_cast<double>(max_any) : 0.0;
    }
  }
  return scores;
}

std::vector<int> cut_membership(const FlowNetwork& net) {
  const auto solved = ford_fulkerson(net, Flow::zero(net), PathStrategy::kBfs);
  const CutResult cut = min_cut(net, solved.flow);
  std::vector<int> labels(static_cast<std::size_t>(net.edge_count()), 0);
  for (EdgeId e : cut.cut_edges) labels[static_cast<std::size_t>(e)] = 1;
  return labels;
}

EdgeScores perturb_scores(const EdgeScores& scores, double noise, std::uint64_t seed) {
  if (!(noise >= 0.0 && noise <= 1.0)) throw ContractError("noise level must lie in [0,1]");
  if (noise == 0.0) return scores;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  EdgeScores out = scores;
  for (double& p : out.values) {
    p = std::clamp((1.0 - noise) * p + noise * uniform(rng), 0.0, 1.0);
  }
  return out;
}

}  // namespace flowpred
