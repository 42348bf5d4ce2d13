#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "flowpred/scores.hpp"

namespace flowpred {

/// One-line notation over {0, ..., n-1}: position i holds value (*this)[i].
/// Positions are ranks, values are edge ids when built from scores.
class Permutation {
 public:
  Permutation() = default;
  /// Throws ContractError unless `values` is a bijection on {0..n-1}.
  explicit Permutation(std::vector<std::size_t> values);
  static Permutation identity(std::size_t n);

  std::size_t size() const { return values_.size(); }
  std::size_t operator[](std::size_t i) const { return values_[i]; }
  std::span<const std::size_t> values() const { return values_; }

  Permutation inverse() const;
  /// (a * b)(i) = a(b(i)).
  friend Permutation operator*(const Permutation& a, const Permutation& b);
  bool operator==(const Permutation&) const = default;

  std::size_t cycle_count() const;

 private:
  std::vector<std::size_t> values_;
};

/// Edge ids ordered by descending score, ties by ascending id.
Permutation ranking_from_scores(const EdgeScores& scores);

/// n - c(sigma^-1 sigma_hat): the minimum number of transpositions turning
/// one permutation into the other.
std::size_t cayley_distance(const Permutation& sigma, const Permutation& sigma_hat);

/// Position weights w(1) >= w(2) >= ... >= w(n) > 0 (stored 0-based).
class WeightFunction {
 public:
  /// Throws ContractError unless positive and non-increasing.
  explicit WeightFunction(std::vector<double> weights);
  static WeightFunction uniform(std::size_t n);
  /// w(i) = 1 / i.
  static WeightFunction harmonic(std::size_t n);

  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t position) const { return weights_[position]; }

 private:
  std::vector<double> weights_;
};

struct WeightedDistance {
  double value = 0.0;
  /// False when `value` is only the greedy upper bound.
  bool exact = false;
};

inline constexpr std::size_t kMaxExactWeightedSize = 8;

/// Minimum total cost of position swaps turning the one-line array of
/// `sigma` into that of `sigma_hat`, where swapping positions i < j costs
/// w(i). Uniform-cost search over S_n; throws ContractError for n > 8.
WeightedDistance weighted_cayley_exact(const Permutation& sigma, const Permutation& sigma_hat,
                                       const WeightFunction& w);

/// Cost of an explicit (n - cycles)-swap schedule: the cheaper of fixing
/// positions from the last one upward or from the first one downward.
WeightedDistance weighted_cayley_bound(const Permutation& sigma, const Permutation& sigma_hat,
                                       const WeightFunction& w);

/// Exact when n <= 8, otherwise the flagged bound.
WeightedDistance weighted_cayley_distance(const Permutation& sigma, const Permutation& sigma_hat,
                                          const WeightFunction& w);

}  // namespace flowpred
