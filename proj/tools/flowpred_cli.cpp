// Command-line front end: solve, segment, predict, train-linear, distance,
// bench, export-dataset.
//
// Exit codes: 0 success, 1 unreadable or malformed input file, 2 contract
// violation (bad flags, missing seeds, non-total scores, ...), 3 internal
// error.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "flowpred/bench.hpp"
#include "flowpred/generators.hpp"
#include "flowpred/guided.hpp"
#include "flowpred/imageflow.hpp"
#include "flowpred/linear_model.hpp"
#include "flowpred/mpgnn.hpp"
#include "flowpred/permdist.hpp"
#include "flowpred/predictors.hpp"
#include "flowpred/text_io.hpp"
#include "flowpred/warmstart.hpp"

namespace fs = std::filesystem;
using namespace flowpred;

namespace {

constexpr int kExitParse = 1;
constexpr int kExitContract = 2;
constexpr int kExitInternal = 3;

void print_stats(const SolveStats& stats, std::size_t cut_size) {
  std::cout << "flow value " << stats.total_flow << '\n'
            << "stat: flow_value " << stats.total_flow << '\n'
            << "stat: augmentations " << stats.augmentations << '\n'
            << "stat: repairs " << stats.repairs << '\n'
            << "stat: fallback_augmentations " << stats.fallback_augmentations << '\n'
            << "stat: cut_size_k " << cut_size << '\n'
            << "stat: residual_arc_scans " << stats.residual_arc_scans << '\n'
            << "stat: wall_time_us " << stats.wall_time.count() << '\n';
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

// --- solve -----------------------------------------------------------------

struct SolveArgs {
  std::string network;
  std::string strategy = "bfs";
  std::string warm_start;
  std::string scores;
  std::string dump_flow;
};

int run_solve(const SolveArgs& args) {
  const PathStrategy strategy = parse_strategy(args.strategy);
  if (strategy == PathStrategy::kGuided && args.scores.empty()) {
    throw ContractError("strategy guided requires --scores FILE");
  }
  const FlowNetwork net = read_network(fs::path(args.network));
  std::optional<EdgeScores> scores;
  if (!args.scores.empty()) scores = read_scores(fs::path(args.scores), net);

  SolveOptions options{strategy, scores ? &*scores : nullptr, {}};
  SolveResult result;
  if (!args.warm_start.empty()) {
    const auto raw = read_raw_flow(fs::path(args.warm_start), net);
    const ClipResult clipped = clip_to_capacity(net, raw);
    if (clipped.warnings > 0) {
      std::cerr << "warning: " << clipped.warnings << " negative predictions clipped to 0\n";
    }
    result = warm_start_solve(net, raw, options);
  } else {
    result = ford_fulkerson(net, Flow::zero(net), options);
  }
  const CutResult cut = min_cut(net, result.flow);
  print_stats(result.stats, cut.size());
  if (!args.dump_flow.empty()) write_flow(fs::path(args.dump_flow), result.flow);
  return 0;
}

// --- segment ---------------------------------------------------------------

struct SegmentArgs {
  std::string image;
  std::string seeds;
  std::string out;
  std::string strategy = "bfs";
  std::string scores;
  GraphParams params;
};

int run_segment(const SegmentArgs& args) {
  const PathStrategy strategy = parse_strategy(args.strategy);
  const GrayImage image = read_pgm(fs::path(args.image));
  const SeedMask seeds = SeedMask::from_image(read_pgm(fs::path(args.seeds)));
  const SegmentationGraph graph = build_grid_graph(image, seeds, args.params);

  std::optional<EdgeScores> scores;
  if (strategy == PathStrategy::kGuided) {
    scores = args.scores.empty() ? oracle_scores(graph.network())
                                 : read_scores(fs::path(args.scores), graph.network());
  }
  const SegmentResult result =
      segment(graph, SolveOptions{strategy, scores ? &*scores : nullptr, {}});
  write_pgm(fs::path(args.out), result.mask.to_image());
  std::size_t foreground = 0;
  for (auto px : result.mask.foreground) foreground += px;
  print_stats(result.stats, result.cut.size());
  std::cout << "stat: foreground_pixels " << foreground << '\n';
  return 0;
}

// --- predict ---------------------------------------------------------------

struct PredictArgs {
  std::string network;
  std::string source = "oracle";
  double noise = 0.0;
  std::uint64_t seed = 1;
  std::string model;
  std::string weights;
  std::string flow;
  std::string out;
};

int run_predict(const PredictArgs& args) {
  const FlowNetwork net = read_network(fs::path(args.network));
  Flow flow = Flow::zero(net);
  if (!args.flow.empty()) {
    const auto raw = read_raw_flow(fs::path(args.flow), net);
    flow = repair_feasibility(net, clip_to_capacity(net, raw).pseudo).flow;
  }
  EdgeScores scores;
  if (args.source == "oracle") {
    scores = oracle_scores(net);
  } else if (args.source == "noisy") {
    scores = perturb_scores(oracle_scores(net), args.noise, args.seed);
  } else if (args.source == "linear") {
    if (args.model.empty()) throw ContractError("--source linear requires --model FILE");
    scores = linear_scores(load_linear_model(fs::path(args.model)), net, flow);
  } else if (args.source == "mpgnn") {
    if (args.weights.empty()) throw ContractError("--source mpgnn requires --weights FILE");
    scores = mpgnn_forward(load_weights(fs::path(args.weights)), net, flow);
  } else {
    throw ContractError("unknown score source '" + args.source + "'");
  }
  if (args.out.empty()) {
    write_scores(std::cout, scores);
  } else {
    write_scores(fs::path(args.out), scores);
  }
  return 0;
}

// --- train-linear ----------------------------------------------------------

struct TrainArgs {
  std::vector<std::string> networks;
  int generate = 20;
  VertexId n = 8;
  std::int64_t m = 16;
  Capacity cap_max = 10;
  std::uint64_t seed = 1;
  int epochs = 200;
  double learning_rate = 0.1;
  std::string out;
};

int run_train(const TrainArgs& args) {
  std::vector<FlowNetwork> training;
  for (const auto& path : args.networks) training.push_back(read_network(fs::path(path)));
  if (training.empty()) {
    for (int i = 0; i < args.generate; ++i) {
      training.push_back(random_network(args.n, args.m, args.cap_max, derive_seed(args.seed, i)));
    }
  }
  const LinearModel model = train_linear_scorer(training, args.epochs, args.learning_rate);
  save_linear_model(fs::path(args.out), model);
  std::cout << "stat: training_edges_networks " << training.size() << '\n'
            << "stat: initial_loss " << format_double(model.loss_history.front()) << '\n'
            << "stat: final_loss " << format_double(model.final_loss()) << '\n';
  return 0;
}

// --- distance --------------------------------------------------------------

struct DistanceArgs {
  std::string truth;
  std::string predicted;
  bool exact = false;
  bool bound = false;
  std::string weights;
};

int run_distance(const DistanceArgs& args) {
  if (args.exact && args.bound) throw ContractError("--exact and --bound are exclusive");
  const EdgeScores a = read_scores(fs::path(args.truth));
  const EdgeScores b = read_scores(fs::path(args.predicted));
  if (a.size() != b.size()) throw ContractError("score files cover different edge counts");
  const Permutation sigma = ranking_from_scores(a);
  const Permutation sigma_hat = ranking_from_scores(b);
  const WeightFunction w = args.weights.empty()
                               ? WeightFunction::harmonic(sigma.size())
                               : WeightFunction(read_weight_list(fs::path(args.weights)));
  WeightedDistance weighted;
  if (args.exact) {
    weighted = weighted_cayley_exact(sigma, sigma_hat, w);
  } else if (args.bound) {
    weighted = weighted_cayley_bound(sigma, sigma_hat, w);
  } else {
    weighted = weighted_cayley_distance(sigma, sigma_hat, w);
  }
  std::cout << "stat: cayley " << cayley_distance(sigma, sigma_hat) << '\n'
            << "stat: weighted_cayley " << format_double(weighted.value) << '\n'
            << "stat: weighted_cayley_exact " << (weighted.exact ? 1 : 0) << '\n';
  return 0;
}

// --- bench -----------------------------------------------------------------

struct BenchArgs {
  ExperimentConfig config;
  std::string family = "random";
  std::string solvers = "dfs,edmonds_karp,adjusted_bfs,guided,warm_edmonds_karp,warm_guided";
  std::string predictors = "oracle,noisy";
  std::string noise = "0,0.5,1";
  std::string weights;
  std::string out;
  std::string repro_dir = ".";
  bool full_scale = false;
};

int run_bench(BenchArgs args) {
  ExperimentConfig& config = args.config;
  config.family = parse_family(args.family);
  config.solvers = split_list(args.solvers);
  config.predictors = split_list(args.predictors);
  config.noise_levels.clear();
  for (const auto& level : split_list(args.noise)) {
    try {
      config.noise_levels.push_back(std::stod(level));
    } catch (const std::exception&) {
      throw ContractError("bad noise level '" + level + "'");
    }
  }
  if (!args.weights.empty()) config.mpgnn_weights = fs::path(args.weights);
  if (args.full_scale && config.family == InstanceFamily::kGrid) {
    config.instances = 500;
    config.width = 60;
    config.height = 60;
  }
  const auto records = run_matrix(config, fs::path(args.repro_dir));
  if (args.out.empty()) {
    write_csv(std::cout, records);
  } else {
    std::ofstream out(args.out);
    if (!out) throw ContractError("cannot write " + args.out);
    write_csv(out, records);
    std::cout << "stat: trials " << records.size() << '\n';
  }
  return 0;
}

// --- export-dataset --------------------------------------------------------

struct ExportArgs {
  ExperimentConfig config;
  std::string family = "random";
  int count = 10;
  std::string out_dir;
};

int run_export(ExportArgs args) {
  if (args.count < 1) throw ContractError("export-dataset needs --count >= 1");
  ExperimentConfig& config = args.config;
  config.family = parse_family(args.family);
  config.instances = args.count;
  config.validate();
  std::error_code ec;
  fs::create_directories(args.out_dir, ec);
  if (ec || !fs::is_directory(args.out_dir)) {
    throw ContractError("cannot create output directory " + args.out_dir);
  }
  for (int i = 0; i < args.count; ++i) {
    const std::uint64_t seed = derive_seed(config.seed, static_cast<std::uint64_t>(i));
    const FlowNetwork net = make_instance_network(config, seed);
    char stem[32];
    std::snprintf(stem, sizeof(stem), "instance_%04d", i);
    const fs::path base = fs::path(args.out_dir) / stem;
    write_network(fs::path(base.string() + ".net"), net);
    write_scores(fs::path(base.string() + ".scores"), oracle_scores(net));
    std::ofstream labels(base.string() + ".labels");
    if (!labels) throw ContractError("cannot write into " + args.out_dir);
    write_labels(labels, cut_membership(net));
  }
  std::cout << "stat: instances " << args.count << '\n';
  return 0;
}

void add_family_options(CLI::App* cmd, ExperimentConfig& config, std::string& family) {
  cmd->add_option("--family", family, "random | grid | diamond")->capture_default_str();
  cmd->add_option("--seed", config.seed, "base RNG seed")->capture_default_str();
  cmd->add_option("--n", config.n, "random family: vertex count")->capture_default_str();
  cmd->add_option("--m", config.m, "random family: edge count")->capture_default_str();
  cmd->add_option("--cap-max", config.cap_max, "largest capacity")->capture_default_str();
  cmd->add_option("--width", config.width, "grid family: image width")->capture_default_str();
  cmd->add_option("--height", config.height, "grid family: image height")->capture_default_str();
  cmd->add_option("--contrast", config.contrast, "grid family: region contrast")->capture_default_str();
}

void add_graph_options(CLI::App* cmd, GraphParams& params) {
  cmd->add_option("--contrast-scale", params.contrast_scale, "boundary weight C")->capture_default_str();
  cmd->add_option("--sigma", params.sigma, "boundary weight sigma")->capture_default_str();
  cmd->add_option("--neighborhood", params.neighborhood, "4 or 8")->capture_default_str();
  cmd->add_option("--weight-scale", params.weight_scale, "fixed-point multiplier")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Prediction-augmented Ford-Fulkerson toolkit"};
  app.require_subcommand(1);
  std::function<int()> action;

  SolveArgs solve;
  auto* cmd = app.add_subcommand("solve", "Solve a max-flow instance");
  cmd->add_option("network", solve.network, "network text file")->required();
  cmd->add_option("--strategy", solve.strategy, "dfs | bfs | adjusted_bfs | guided")->capture_default_str();
  cmd->add_option("--warm-start", solve.warm_start, "predicted flow file (edge_id value)");
  cmd->add_option("--scores", solve.scores, "edge scores file (edge_id score)");
  cmd->add_option("--dump-flow", solve.dump_flow, "write the final flow here");
  cmd->callback([&] { action = [&] { return run_solve(solve); }; });

  SegmentArgs seg;
  cmd = app.add_subcommand("segment", "Segment a PGM image from seeds");
  cmd->add_option("image", seg.image, "grayscale PGM")->required();
  cmd->add_option("seeds", seg.seeds, "seeds PGM (0 neutral, 255 source, 128 sink)")->required();
  cmd->add_option("--out", seg.out, "mask PGM output")->required();
  cmd->add_option("--strategy", seg.strategy, "dfs | bfs | adjusted_bfs | guided")->capture_default_str();
  cmd->add_option("--scores", seg.scores, "scores for guided (default: oracle)");
  add_graph_options(cmd, seg.params);
  cmd->callback([&] { action = [&] { return run_segment(seg); }; });

  PredictArgs predict;
  cmd = app.add_subcommand("predict", "Emit an edge scores file");
  cmd->add_option("network", predict.network, "network text file")->required();
  cmd->add_option("--source", predict.source, "oracle | noisy | linear | mpgnn")->capture_default_str();
  cmd->add_option("--noise", predict.noise, "noise level for noisy")->capture_default_str();
  cmd->add_option("--seed", predict.seed, "noise seed")->capture_default_str();
  cmd->add_option("--model", predict.model, "linear model JSON");
  cmd->add_option("--weights", predict.weights, "MPGNN weights JSON");
  cmd->add_option("--flow", predict.flow, "flow to featurize (default zero)");
  cmd->add_option("--out", predict.out, "output file (default stdout)");
  cmd->callback([&] { action = [&] { return run_predict(predict); }; });

  TrainArgs train;
  cmd = app.add_subcommand("train-linear", "Fit the logistic edge scorer");
  cmd->add_option("networks", train.networks, "training network files (default: generated)");
  cmd->add_option("--generate", train.generate, "random training networks when none given")->capture_default_str();
  cmd->add_option("--n", train.n)->capture_default_str();
  cmd->add_option("--m", train.m)->capture_default_str();
  cmd->add_option("--cap-max", train.cap_max)->capture_default_str();
  cmd->add_option("--seed", train.seed)->capture_default_str();
  cmd->add_option("--epochs", train.epochs)->capture_default_str();
  cmd->add_option("--lr", train.learning_rate)->capture_default_str();
  cmd->add_option("--out", train.out, "model JSON output")->required();
  cmd->callback([&] { action = [&] { return run_train(train); }; });

  DistanceArgs dist;
  cmd = app.add_subcommand("distance", "Cayley distances between two score rankings");
  cmd->add_option("truth", dist.truth, "reference scores file")->required();
  cmd->add_option("predicted", dist.predicted, "predicted scores file")->required();
  cmd->add_flag("--exact", dist.exact, "uniform-cost search (n <= 8)");
  cmd->add_flag("--bound", dist.bound, "greedy upper bound");
  cmd->add_option("--weights", dist.weights, "position weights, one per line (default 1/i)");
  cmd->callback([&] { action = [&] { return run_distance(dist); }; });

  BenchArgs bench;
  cmd = app.add_subcommand("bench", "Run the solver x predictor matrix and write CSV");
  add_family_options(cmd, bench.config, bench.family);
  add_graph_options(cmd, bench.config.graph_params);
  cmd->add_option("--instances", bench.config.instances)->capture_default_str();
  cmd->add_option("--repetitions", bench.config.repetitions)->capture_default_str();
  cmd->add_option("--solvers", bench.solvers, "comma-separated")->capture_default_str();
  cmd->add_option("--predictors", bench.predictors, "comma-separated")->capture_default_str();
  cmd->add_option("--noise", bench.noise, "comma-separated noise sweep")->capture_default_str();
  cmd->add_option("--weights", bench.weights, "MPGNN weights for the mpgnn predictor");
  cmd->add_option("--out", bench.out, "CSV output (default stdout)");
  cmd->add_option("--repro-dir", bench.repro_dir, "where failing instances are written")->capture_default_str();
  cmd->add_flag("--full-scale", bench.full_scale, "grid family: 500 images at 60x60");
  cmd->callback([&] { action = [&] { return run_bench(bench); }; });

  ExportArgs exp;
  cmd = app.add_subcommand("export-dataset", "Write networks, oracle scores and cut labels");
  add_family_options(cmd, exp.config, exp.family);
  add_graph_options(cmd, exp.config.graph_params);
  cmd->add_option("--count", exp.count, "number of instances")->capture_default_str();
  cmd->add_option("--out-dir", exp.out_dir, "output directory")->required();
  cmd->callback([&] { action = [&] { return run_export(exp); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitContract;
  }

  try {
    return action();
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitContract;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}
