#include "flowpred/permdist.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <string>
#include <unordered_map>

#include "flowpred/error.hpp"

namespace flowpred {

Permutation::Permutation(std::vector<std::size_t> values) : values_(std::move(values)) {
  std::vector<char> seen(values_.size(), 0);
  for (std::size_t v : values_) {
    if (v >= values_.size() || seen[v]) {
      throw ContractError("not a permutation of 0.." + std::to_string(values_.size()) + "-1");
    }
    seen[v] = 1;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> values(n);
  std::iota(values.begin(), values.end(), std::size_t{0});
  return Permutation(std::move(values));
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> inv(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) inv[values_[i]] = i;
  Permutation p;
  p.values_ = std::move(inv);
  return p;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw ContractError("composing permutations of different sizes");
  std::vector<std::size_t> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[b[i]];
  Permutation p;
  p.values_ = std::move(out);
  return p;
}

std::size_t Permutation::cycle_count() const {
  std::vector<char> seen(values_.size(), 0);
  std::size_t cycles = 0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (seen[i]) continue;
    ++cycles;
    for (std::size_t j = i; !seen[j]; j = values_[j]) seen[j] = 1;
  }
  return cycles;
}

Permutation ranking_from_scores(const EdgeScores& scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores.values[a] > scores.values[b];
  });
  return Permutation(std::move(order));
}

std::size_t cayley_distance(const Permutation& sigma, const Permutation& sigma_hat) {
  if (sigma.size() != sigma_hat.size()) {
    throw ContractError("cayley_distance: lengths " + std::to_string(sigma.size()) + " and " +
                        std::to_string(sigma_hat.size()) + " differ");
  }
  return sigma.size() - (sigma.inverse() * sigma_hat).cycle_count();
}

WeightFunction::WeightFunction(std::vector<double> weights) : weights_(std::move(weights)) {
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (!(weights_[i] > 0.0)) throw ContractError("weight " + std::to_string(i + 1) + " not positive");
    if (i > 0 && weights_[i] > weights_[i - 1]) {
      throw ContractError("weights must be non-increasing (position " + std::to_string(i + 1) + ")");
    }
  }
}

WeightFunction WeightFunction::uniform(std::size_t n) {
  return WeightFunction(std::vector<double>(n, 1.0));
}

WeightFunction WeightFunction::harmonic(std::size_t n) {
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = 1.0 / static_cast<double>(i + 1);
  return WeightFunction(std::move(w));
}

namespace {

void check_sizes(const Permutation& sigma, const Permutation& sigma_hat, const WeightFunction& w) {
  if (sigma.size() != sigma_hat.size() || sigma.size() != w.size()) {
    throw ContractError("weighted Cayley distance needs equal lengths (got " +
                        std::to_string(sigma.size()) + ", " + std::to_string(sigma_hat.size()) +
                        ", weights " + std::to_string(w.size()) + ")");
  }
}

// Packs a permutation of at most 8 elements into 3 bits per position.
std::uint32_t pack(const std::vector<std::uint8_t>& p) {
  std::uint32_t key = 0;
  for (std::size_t i = 0; i < p.size(); ++i) key |= static_cast<std::uint32_t>(p[i]) << (3 * i);
  return key;
}

// Relabels so that the target becomes the identity: entry i of the result is
// the target position of the element currently at position i.
std::vector<std::size_t> positions_in_target(const Permutation& sigma, const Permutation& sigma_hat) {
  const Permutation where = sigma_hat.inverse();
  std::vector<std::size_t> out(sigma.size());
  for (std::size_t i = 0; i < sigma.size(); ++i) out[i] = where[sigma[i]];
  return out;
}

}  // namespace

WeightedDistance weighted_cayley_exact(const Permutation& sigma, const Permutation& sigma_hat,
                                       const WeightFunction& w) {
  check_sizes(sigma, sigma_hat, w);
  const std::size_t n = sigma.size();
  if (n > kMaxExactWeightedSize) {
    throw ContractError("exact weighted Cayley distance limited to n <= 8, got n = " +
                        std::to_string(n));
  }
  const auto start_positions = positions_in_target(sigma, sigma_hat);
  std::vector<std::uint8_t> start(start_positions.begin(), start_positions.end());
  std::vector<std::uint8_t> goal(n);
  std::iota(goal.begin(), goal.end(), std::uint8_t{0});
  const std::uint32_t goal_key = pack(goal);

  using Item = std::pair<double, std::uint32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
  std::unordered_map<std::uint32_t, double> best;
  best[pack(start)] = 0.0;
  open.emplace(0.0, pack(start));
  std::vector<std::uint8_t> state(n);
  while (!open.empty()) {
    const auto [cost, key] = open.top();
    open.pop();
    if (key == goal_key) return WeightedDistance{cost, true};
    if (cost > best[key]) continue;
    for (std::size_t i = 0; i < n; ++i) state[i] = static_cast<std::uint8_t>((key >> (3 * i)) & 7u);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        std::swap(state[i], state[j]);
        const std::uint32_t next = pack(state);
        const double next_cost = cost + w[i];
        auto it = best.find(next);
        if (it == best.end() || next_cost < it->second) {
          best[next] = next_cost;
          open.emplace(next_cost, next);
        }
        std::swap(state[i], state[j]);
      }
    }
  }
  return WeightedDistance{0.0, true};  // n == 0
}

WeightedDistance weighted_cayley_bound(const Permutation& sigma, const Permutation& sigma_hat,
                                       const WeightFunction& w) {
  check_sizes(sigma, sigma_hat, w);
  const std::size_t n = sigma.size();
  const auto target = positions_in_target(sigma, sigma_hat);

  // Selection-style schedules; each swap settles one element, so both use
  // exactly n - cycles swaps.
  auto schedule_cost = [&](bool from_last) {
    std::vector<std::size_t> state = target;  // state[pos] = element (its goal position)
    std::vector<std::size_t> where(n);        // where[element] = current position
    for (std::size_t i = 0; i < n; ++i) where[state[i]] = i;
    double cost = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t pos = from_last ? n - 1 - k : k;
      if (state[pos] == pos) continue;
      const std::size_t other = where[pos];
      cost += w[std::min(pos, other)];
      std::swap(state[pos], state[other]);
      where[state[pos]] = pos;
      where[state[other]] = other;
    }
    return cost;
  };
  return WeightedDistance{std::min(schedule_cost(true), schedule_cost(false)), false};
}

WeightedDistance weighted_cayley_distance(const Permutation& sigma, const Permutation& sigma_hat,
                                          const WeightFunction& w) {
  if (sigma.size() <= kMaxExactWeightedSize) return weighted_cayley_exact(sigma, sigma_hat, w);
  return weighted_cayley_bound(sigma, sigma_hat, w);
}

}  // namespace flowpred
