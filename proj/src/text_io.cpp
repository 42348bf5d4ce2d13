#include "flowpred/text_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "flowpred/error.hpp"

namespace flowpred {
namespace {

// Splits the stream into whitespace-separated tokens with comments removed,
// remembering the line each token came from.
struct Token {
  std::string text;
  int line;
};

std::vector<std::vector<Token>> tokenize_lines(std::istream& in) {
  std::vector<std::vector<Token>> lines;
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream words(raw);
    std::vector<Token> tokens;
    for (std::string word; words >> word;) tokens.push_back(Token{word, number});
    if (!tokens.empty()) lines.push_back(std::move(tokens));
  }
  return lines;
}

template <typename Int>
Int parse_int(const Token& token, const char* what) {
  Int value{};
  const char* first = token.text.data();
  const char* last = first + token.text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError("line " + std::to_string(token.line) + ": expected integer " + what +
                     ", got '" + token.text + "'");
  }
  return value;
}

double parse_double(const Token& token, const char* what) {
  double value{};
  const char* first = token.text.data();
  const char* last = first + token.text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError("line " + std::to_string(token.line) + ": expected decimal " + what +
                     ", got '" + token.text + "'");
  }
  return value;
}

void expect_width(const std::vector<Token>& line, std::size_t width, const char* shape) {
  if (line.size() != width) {
    throw ParseError("line " + std::to_string(line.front().line) + ": expected `" + shape + "`");
  }
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ContractError("cannot write " + path.string());
  return out;
}

// Parses `edge_id value` pairs; returns values per edge plus presence flags.
std::vector<double> read_edge_values(std::istream& in, const FlowNetwork& net,
                                     std::vector<char>& present) {
  const auto m = static_cast<std::size_t>(net.edge_count());
  std::vector<double> values(m, 0.0);
  present.assign(m, 0);
  for (const auto& line : tokenize_lines(in)) {
    expect_width(line, 2, "edge_id value");
    const auto id = parse_int<std::int64_t>(line[0], "edge id");
    if (id < 0 || id >= net.edge_count()) {
      throw ParseError("line " + std::to_string(line[0].line) + ": edge id " + line[0].text +
                       " out of range");
    }
    auto& seen = present[static_cast<std::size_t>(id)];
    if (seen) {
      throw ParseError("line " + std::to_string(line[0].line) + ": duplicate edge id " +
                       line[0].text);
    }
    seen = 1;
    values[static_cast<std::size_t>(id)] = parse_double(line[1], "value");
  }
  return values;
}

}  // namespace

std::string format_double(double value) {
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

FlowNetwork read_network(std::istream& in) {
  const auto lines = tokenize_lines(in);
  if (lines.empty()) throw ParseError("empty network file");
  expect_width(lines[0], 4, "n m s t");
  const auto n = parse_int<VertexId>(lines[0][0], "vertex count");
  const auto m = parse_int<std::int64_t>(lines[0][1], "edge count");
  const auto s = parse_int<VertexId>(lines[0][2], "source");
  const auto t = parse_int<VertexId>(lines[0][3], "sink");
  if (m < 0) throw ParseError("negative edge count");
  if (static_cast<std::int64_t>(lines.size()) - 1 != m) {
    throw ParseError("header announces " + std::to_string(m) + " edges, file has " +
                     std::to_string(lines.size() - 1));
  }
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    expect_width(lines[i], 3, "u v cap");
    edges.push_back(Edge{parse_int<VertexId>(lines[i][0], "tail"),
                         parse_int<VertexId>(lines[i][1], "head"),
                         parse_int<Capacity>(lines[i][2], "capacity")});
  }
  return FlowNetwork::build(n, std::move(edges), s, t);
}

FlowNetwork read_network(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_network(in);
}

void write_network(std::ostream& out, const FlowNetwork& net) {
  out << net.vertex_count() << ' ' << net.edge_count() << ' ' << net.source() << ' ' << net.sink()
      << '\n';
  for (const Edge& e : net.edges()) out << e.tail << ' ' << e.head << ' ' << e.capacity << '\n';
}

void write_network(const std::filesystem::path& path, const FlowNetwork& net) {
  auto out = open_out(path);
  write_network(out, net);
}

EdgeScores read_scores(std::istream& in, const FlowNetwork& net) {
  std::vector<char> present;
  EdgeScores scores{read_edge_values(in, net, present)};
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    if (!present[static_cast<std::size_t>(e)]) {
      throw ContractError("scores file has no entry for edge " + std::to_string(e));
    }
  }
  validate_scores(net, scores);
  return scores;
}

EdgeScores read_scores(const std::filesystem::path& path, const FlowNetwork& net) {
  auto in = open_in(path);
  return read_scores(in, net);
}

EdgeScores read_scores(const std::filesystem::path& path) {
  auto in = open_in(path);
  const auto lines = tokenize_lines(in);
  EdgeScores scores{std::vector<double>(lines.size(), 0.0)};
  std::vector<char> present(lines.size(), 0);
  for (const auto& line : lines) {
    expect_width(line, 2, "edge_id score");
    const auto id = parse_int<std::int64_t>(line[0], "edge id");
    if (id < 0 || id >= static_cast<std::int64_t>(lines.size()) ||
        present[static_cast<std::size_t>(id)]) {
      throw ParseError("line " + std::to_string(line[0].line) + ": edge id " + line[0].text +
                       " duplicated or outside 0.." + std::to_string(lines.size() - 1));
    }
    present[static_cast<std::size_t>(id)] = 1;
    const double p = parse_double(line[1], "score");
    if (!(p >= 0.0 && p <= 1.0)) {
      throw ContractError("score for edge " + line[0].text + " outside [0,1]");
    }
    scores.values[static_cast<std::size_t>(id)] = p;
  }
  return scores;
}

void write_scores(std::ostream& out, const EdgeScores& scores) {
  for (std::size_t e = 0; e < scores.size(); ++e) {
    out << e << ' ' << format_double(scores.values[e]) << '\n';
  }
}

void write_scores(const std::filesystem::path& path, const EdgeScores& scores) {
  auto out = open_out(path);
  write_scores(out, scores);
}

std::vector<double> read_raw_flow(std::istream& in, const FlowNetwork& net) {
  std::vector<char> present;
  return read_edge_values(in, net, present);
}

std::vector<double> read_raw_flow(const std::filesystem::path& path, const FlowNetwork& net) {
  auto in = open_in(path);
  return read_raw_flow(in, net);
}

void write_flow(std::ostream& out, const Flow& flow) {
  for (std::size_t e = 0; e < flow.values.size(); ++e) out << e << ' ' << flow.values[e] << '\n';
}

void write_flow(const std::filesystem::path& path, const Flow& flow) {
  auto out = open_out(path);
  write_flow(out, flow);
}

void write_labels(std::ostream& out, const std::vector<int>& labels) {
  for (std::size_t e = 0; e < labels.size(); ++e) out << e << ' ' << labels[e] << '\n';
}

std::vector<double> read_weight_list(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::vector<double> weights;
  for (const auto& line : tokenize_lines(in)) {
    expect_width(line, 1, "weight");
    weights.push_back(parse_double(line[0], "weight"));
  }
  return weights;
}

}  // namespace flowpred
