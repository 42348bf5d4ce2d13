#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "flowpred/error.hpp"
#include "flowpred/imageflow.hpp"

namespace flowpred {

enum class InstanceFamily { kRandom, kGrid, kDiamond };

struct ExperimentConfig {
  InstanceFamily family = InstanceFamily::kRandom;
  // random family
  VertexId n = 8;
  std::int64_t m = 16;
  Capacity cap_max = 10;
  // grid family
  int width = 16;
  int height = 16;
  int contrast = 100;
  GraphParams graph_params;

  int instances = 10;
  int repetitions = 1;
  std::uint64_t seed = 1;
  /// dfs, edmonds_karp, adjusted_bfs, guided, warm_edmonds_karp, warm_guided
  std::vector<std::string> solvers{"edmonds_karp", "guided"};
  /// oracle, noisy, linear, mpgnn. Only `noisy` sweeps the noise levels.
  std::vector<std::string> predictors{"oracle"};
  std::vector<double> noise_levels{0.0};
  std::optional<std::filesystem::path> mpgnn_weights;
  int linear_training_instances = 8;
  int linear_epochs = 200;
  double linear_learning_rate = 0.1;

  /// Throws ContractError on bad parameters or unknown names.
  void validate() const;
  /// Human-readable `key = value` lines.
  std::string describe() const;
};

struct TrialRecord {
  std::string instance_id;
  std::string solver;
  std::string predictor;
  double noise = 0.0;
  std::int64_t augmentations = 0;
  std::int64_t repairs = 0;
  Capacity flow_value = 0;
  std::size_t cut_size_k = 0;
  std::size_t cayley = 0;
  double weighted_cayley = 0.0;
  std::int64_t wall_time_us = 0;
};

/// Instance generator for `config.family` with an explicit stream seed.
FlowNetwork make_instance_network(const ExperimentConfig& config, std::uint64_t seed);

/// A solver disagreed with the Edmonds-Karp reference value.
class OptimalityViolation : public Error {
 public:
  OptimalityViolation(const std::string& message, std::filesystem::path repro)
      : Error(message), repro_(std::move(repro)) {}
  const std::filesystem::path& reproduction_file() const { return repro_; }

 private:
  std::filesystem::path repro_;
};

/// Runs every (instance, solver, predictor, noise) cell and returns the
/// records sorted by those four keys. On a non-optimal solve the instance,
/// its scores and the config are written under `repro_dir` and
/// OptimalityViolation is thrown.
std::vector<TrialRecord> run_matrix(const ExperimentConfig& config,
                                    const std::filesystem::path& repro_dir = ".");

inline constexpr const char* kCsvHeader =
    "instance_id,solver,predictor,noise,augmentations,repairs,flow_value,cut_size_k,cayley,"
    "weighted_cayley,wall_time_us";

void write_csv(std::ostream& out, const std::vector<TrialRecord>& records);

InstanceFamily parse_family(const std::string& name);
std::string to_string(InstanceFamily family);

}  // namespace flowpred
