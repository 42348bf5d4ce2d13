#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "flowpred/network.hpp"
#include "flowpred/scores.hpp"

namespace flowpred {

// Network text format: a header line `n m s t`, then m lines `u v cap`.
// Everything after `#` on a line is ignored. Writers emit edges in id order.
FlowNetwork read_network(std::istream& in);
FlowNetwork read_network(const std::filesystem::path& path);
void write_network(std::ostream& out, const FlowNetwork& net);
void write_network(const std::filesystem::path& path, const FlowNetwork& net);

// Scores file: one `edge_id score` line per edge, score in [0,1]. Must cover
// every edge exactly once.
EdgeScores read_scores(std::istream& in, const FlowNetwork& net);
EdgeScores read_scores(const std::filesystem::path& path, const FlowNetwork& net);
/// Without a network the edge count is the number of lines; ids must be
/// exactly 0..count-1.
EdgeScores read_scores(const std::filesystem::path& path);
void write_scores(std::ostream& out, const EdgeScores& scores);
void write_scores(const std::filesystem::path& path, const EdgeScores& scores);

// Raw predicted flow: `edge_id value` lines, value any decimal. Edges not
// listed default to 0; duplicates are rejected.
std::vector<double> read_raw_flow(std::istream& in, const FlowNetwork& net);
std::vector<double> read_raw_flow(const std::filesystem::path& path, const FlowNetwork& net);

// Flow dump: `edge_id value` integer lines in edge id order.
void write_flow(std::ostream& out, const Flow& flow);
void write_flow(const std::filesystem::path& path, const Flow& flow);

// Cut-membership labels: `edge_id 0|1` lines in edge id order.
void write_labels(std::ostream& out, const std::vector<int>& labels);

// One decimal per line.
std::vector<double> read_weight_list(const std::filesystem::path& path);

/// Shortest decimal form that reads back to the same double.
std::string format_double(double value);

}  // namespace flowpred
