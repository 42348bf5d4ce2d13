#include "flowpred/bench.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <random>
#include <sstream>
#include <tuple>

#include "flowpred/generators.hpp"
#include "flowpred/guided.hpp"
#include "flowpred/linear_model.hpp"
#include "flowpred/mpgnn.hpp"
#include "flowpred/permdist.hpp"
#include "flowpred/predictors.hpp"
#include "flowpred/text_io.hpp"
#include "flowpred/warmstart.hpp"

namespace flowpred {
namespace {

const std::vector<std::string> kSolvers{"dfs",    "edmonds_karp",      "adjusted_bfs",
                                        "guided", "warm_edmonds_karp", "warm_guided"};
const std::vector<std::string> kPredictors{"oracle", "noisy", "linear", "mpgnn"};

bool known(const std::vector<std::string>& names, const std::string& name) {
  return std::find(names.begin(), names.end(), name) != names.end();
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& item : items) out += (out.empty() ? "" : ",") + item;
  return out;
}

struct Instance {
  std::string id;
  std::uint64_t seed;
  FlowNetwork net;
};

}  // namespace

FlowNetwork make_instance_network(const ExperimentConfig& config, std::uint64_t seed) {
  switch (config.family) {
    case InstanceFamily::kRandom:
      return random_network(config.n, config.m, config.cap_max, seed);
    case InstanceFamily::kDiamond:
      return random_diamond(seed, config.cap_max);
    case InstanceFamily::kGrid: {
      const auto grid = random_grid_instance(config.width, config.height, config.contrast, seed);
      return build_grid_graph(grid.image, grid.seeds, config.graph_params).network();
    }
  }
  throw ContractError("unknown instance family");
}

namespace {

std::string instance_id(const ExperimentConfig& config, int index, int rep) {
  std::ostringstream id;
  id << to_string(config.family) << '-';
  id.width(4);
  id.fill('0');
  id << index;
  if (config.repetitions > 1) id << '.' << rep;
  return id.str();
}

// Predicted flow for the warm-start solvers: the exact flow blended with
// uniform noise for oracle-based predictors, score-scaled capacity otherwise.
std::vector<double> flow_prediction(const FlowNetwork& net, const Flow& exact,
                                    const EdgeScores& scores, bool from_oracle, double noise,
                                    std::uint64_t seed) {
  std::vector<double> raw(static_cast<std::size_t>(net.edge_count()));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    const auto c = static_cast<double>(net.edge(e).capacity);
    double& value = raw[static_cast<std::size_t>(e)];
    if (from_oracle) {
      value = (1.0 - noise) * static_cast<double>(exact[e]) + noise * c * uniform(rng);
    } else {
      value = scores[e] * c;
    }
  }
  return raw;
}

void write_repro(const std::filesystem::path& dir, const Instance& instance,
                 const EdgeScores& scores, const ExperimentConfig& config,
                 const std::filesystem::path& net_path) {
  std::filesystem::create_directories(dir);
  std::ofstream net_out(net_path);
  std::istringstream echo(config.describe());
  for (std::string line; std::getline(echo, line);) net_out << "# " << line << '\n';
  net_out << "# instance " << instance.id << " seed " << instance.seed << '\n';
  write_network(net_out, instance.net);
  std::filesystem::path scores_path = net_path;
  scores_path.replace_extension(".scores");
  write_scores(scores_path, scores);
}

}  // namespace

InstanceFamily parse_family(const std::string& name) {
  if (name == "random") return InstanceFamily::kRandom;
  if (name == "grid") return InstanceFamily::kGrid;
  if (name == "diamond") return InstanceFamily::kDiamond;
  throw ContractError("unknown instance family '" + name + "'");
}

std::string to_string(InstanceFamily family) {
  switch (family) {
    case InstanceFamily::kRandom: return "random";
    case InstanceFamily::kGrid: return "grid";
    case InstanceFamily::kDiamond: return "diamond";
  }
  return "?";
}

void ExperimentConfig::validate() const {
  if (family == InstanceFamily::kRandom) {
    if (n < 2) throw ContractError("n must be >= 2");
    if (m < 0 || m > static_cast<std::int64_t>(n) * (n - 1)) throw ContractError("m out of range");
  }
  if (family == InstanceFamily::kGrid) graph_params.validate();
  if (cap_max < 1) throw ContractError("cap_max must be >= 1");
  if (instances < 1) throw ContractError("instances must be >= 1");
  if (repetitions < 1) throw ContractError("repetitions must be >= 1");
  if (solvers.empty() || predictors.empty()) throw ContractError("empty solver or predictor list");
  for (const auto& s : solvers) {
    if (!known(kSolvers, s)) throw ContractError("unknown solver '" + s + "'");
  }
  for (const auto& p : predictors) {
    if (!known(kPredictors, p)) throw ContractError("unknown predictor '" + p + "'");
    if (p == "mpgnn" && !mpgnn_weights) throw ContractError("mpgnn predictor needs a weights file");
  }
  if (noise_levels.empty()) throw ContractError("empty noise sweep");
  for (double noise : noise_levels) {
    if (!(noise >= 0.0 && noise <= 1.0)) throw ContractError("noise levels must lie in [0,1]");
  }
}

std::string ExperimentConfig::describe() const {
  std::ostringstream out;
  out << "family = " << to_string(family) << '\n';
  if (family == InstanceFamily::kRandom) out << "n = " << n << "\nm = " << m << '\n';
  if (family == InstanceFamily::kGrid) {
    out << "width = " << width << "\nheight = " << height << "\ncontrast = " << contrast
        << "\nC = " << graph_params.contrast_scale << "\nsigma = " << graph_params.sigma
        << "\nneighborhood = " << graph_params.neighborhood
        << "\nweight_scale = " << graph_params.weight_scale << '\n';
  }
  out << "cap_max = " << cap_max << "\ninstances = " << instances
      << "\nrepetitions = " << repetitions << "\nseed = " << seed << "\nsolvers = " << join(solvers)
      << "\npredictors = " << join(predictors) << "\nnoise =";
  for (double noise : noise_levels) out << ' ' << format_double(noise);
  out << '\n';
  return out.str();
}

std::vector<TrialRecord> run_matrix(const ExperimentConfig& config,
                                    const std::filesystem::path& repro_dir) {
  config.validate();

  std::optional<LinearModel> linear;
  if (known(config.predictors, "linear")) {
    std::vector<FlowNetwork> training;
    for (int i = 0; i < config.linear_training_instances; ++i) {
      training.push_back(make_instance_network(config, derive_seed(config.seed ^ 0x5eed5eedULL, i)));
    }
    linear = train_linear_scorer(training, config.linear_epochs, config.linear_learning_rate);
  }
  std::optional<MpgnnWeights> mpgnn;
  if (config.mpgnn_weights) mpgnn = load_weights(*config.mpgnn_weights);

  std::vector<TrialRecord> records;
  for (int index = 0; index < config.instances; ++index) {
    const std::uint64_t instance_seed = derive_seed(config.seed, static_cast<std::uint64_t>(index));
    Instance instance{instance_id(config, index, 0), instance_seed, make_instance_network(config, instance_seed)};
    const FlowNetwork& net = instance.net;
    const Flow zero = Flow::zero(net);

    const SolveResult reference = ford_fulkerson(net, zero, PathStrategy::kBfs);
    const CutResult cut = min_cut(net, reference.flow);
    const EdgeScores oracle = oracle_scores(net, cut);
    const Permutation truth = ranking_from_scores(oracle);
    const WeightFunction weights = WeightFunction::harmonic(truth.size());

    for (int rep = 0; rep < config.repetitions; ++rep) {
      instance.id = instance_id(config, index, rep);
      for (const auto& predictor : config.predictors) {
        const std::vector<double> sweep =
            predictor == "noisy" ? config.noise_levels : std::vector<double>{0.0};
        for (double noise : sweep) {
          const std::uint64_t noise_seed =
              derive_seed(instance_seed, 1000u * static_cast<std::uint64_t>(rep) +
                                             static_cast<std::uint64_t>(noise * 997.0));
          ScoreFn scorer;
          if (predictor == "oracle") {
            scorer = [&](const FlowNetwork&, const Flow&) { return oracle; };
          } else if (predictor == "noisy") {
            scorer = [&, noise, noise_seed](const FlowNetwork&, const Flow&) {
              return perturb_scores(oracle, noise, noise_seed);
            };
          } else if (predictor == "linear") {
            scorer = [&](const FlowNetwork& g, const Flow& f) { return linear_scores(*linear, g, f); };
          } else {
            scorer = [&](const FlowNetwork& g, const Flow& f) { return mpgnn_forward(*mpgnn, g, f); };
          }
          const EdgeScores scores = scorer(net, zero);
          const Permutation ranking = ranking_from_scores(scores);
          const std::size_t cayley = cayley_distance(truth, ranking);
          const double weighted = weighted_cayley_distance(truth, ranking, weights).value;
          const bool oracle_based = predictor == "oracle" || predictor == "noisy";
          const auto raw = flow_prediction(net, reference.flow, scores, oracle_based, noise,
                                           derive_seed(noise_seed, 7));

          for (const auto& solver : config.solvers) {
            SolveResult result;
            if (solver == "dfs") {
              result = ford_fulkerson(net, zero, PathStrategy::kDfs);
            } else if (solver == "edmonds_karp") {
              result = ford_fulkerson(net, zero, PathStrategy::kBfs);
            } else if (solver == "adjusted_bfs") {
              result = adjusted_edmonds_karp(net, zero);
            } else if (solver == "guided") {
              result = guided_ford_fulkerson(net, zero, scores);
            } else if (solver == "warm_edmonds_karp") {
              result = warm_start_solve(net, raw, SolveOptions{PathStrategy::kBfs, nullptr, {}});
            } else {
              result = combined_ford_fulkerson(net, raw, scorer);
            }
            if (result.stats.total_flow != reference.stats.total_flow) {
              const auto path = repro_dir / ("repro_" + instance.id + "_" + solver + ".net");
              write_repro(repro_dir, instance, scores, config, path);
              throw OptimalityViolation("solver " + solver + " returned " +
                                            std::to_string(result.stats.total_flow) +
                                            " on instance " + instance.id + ", reference " +
                                            std::to_string(reference.stats.total_flow),
                                        path);
            }
            records.push_back(TrialRecord{instance.id, solver, predictor, noise,
                                          result.stats.augmentations, result.stats.repairs,
                                          result.stats.total_flow, cut.size(), cayley, weighted,
                                          result.stats.wall_time.count()});
          }
        }
      }
    }
  }
  std::sort(records.begin(), records.end(), [](const TrialRecord& a, const TrialRecord& b) {
    return std::tie(a.instance_id, a.solver, a.predictor, a.noise) <
           std::tie(b.instance_id, b.solver, b.predictor, b.noise);
  });
  return records;
}

void write_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    out << r.instance_id << ',' << r.solver << ',' << r.predictor << ',' << format_double(r.noise)
        << ',' << r.augmentations << ',' << r.repairs << ',' << r.flow_value << ','
        << r.cut_size_k << ',' << r.cayley << ',' << format_double(r.weighted_cayley) << ','
        << r.wall_time_us << '\n';
  }
}

}  // namespace flowpred
