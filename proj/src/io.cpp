#include "pgap/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "pgap/error.hpp"

namespace pgap::io {
namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::istringstream is{std::string(raw)};
    Line line{number, {}};
    for (std::string tok; is >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    pos = end + 1;
  }
  return lines;
}

double parse_number(const std::string& tok, std::size_t line) {
  double v = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (!tok.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v))
    throw Error(Errc::ParseError, "line " + std::to_string(line) + ": bad number '" + tok + "'", {line});
  return v;
}

}  // namespace

FiniteMetricSpace parse_matrix(std::string_view text) {
  const std::vector<Line> lines = tokenize(text);
  std::size_t at = 0;
  std::vector<std::string> labels;
  if (at < lines.size() && (lines[at].tokens[0] == "labels:" || lines[at].tokens[0].starts_with("labels:"))) {
    const auto& toks = lines[at].tokens;
    std::string head = toks[0].substr(7);
    if (!head.empty()) labels.push_back(head);
    labels.insert(labels.end(), toks.begin() + 1, toks.end());
    ++at;
  }
  if (at >= lines.size()) throw Error(Errc::ParseError, "missing matrix order line", {0});
  const Line& order = lines[at++];
  if (order.tokens.size() != 1) throw Error(Errc::ParseError, "line " + std::to_string(order.number) + ": expected n", {order.number});
  const double nd = parse_number(order.tokens[0], order.number);
  if (nd < 1 || nd != std::floor(nd)) throw Error(Errc::ParseError, "line " + std::to_string(order.number) + ": n must be a positive integer", {order.number});
  const auto n = static_cast<std::size_t>(nd);
  if (!labels.empty() && labels.size() != n)
    throw Error(Errc::ParseError, "label count does not match n", {lines[0].number});
  if (labels.empty()) labels = default_labels(n);

  Matrix raw(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (at >= lines.size()) throw Error(Errc::ParseError, "expected " + std::to_string(n) + " matrix rows", {order.number});
    const Line& row = lines[at++];
    if (row.tokens.size() != n)
      throw Error(Errc::ParseError, "line " + std::to_string(row.number) + ": expected " + std::to_string(n) + " entries", {row.number});
    for (std::size_t j = 0; j < n; ++j) raw(i, j) = parse_number(row.tokens[j], row.number);
  }
  if (at != lines.size())
    throw Error(Errc::ParseError, "line " + std::to_string(lines[at].number) + ": trailing content", {lines[at].number});
  return validate_metric(std::move(labels), std::move(raw));
}

WeightedGraph parse_edge_list(std::string_view text) {
  WeightedGraph g;
  for (const Line& line : tokenize(text)) {
    if (line.tokens.size() != 3)
      throw Error(Errc::ParseError, "line " + std::to_string(line.number) + ": expected 'u v w'", {line.number});
    const double w = parse_number(line.tokens[2], line.number);
    if (!(w > 0.0)) throw Error(Errc::ParseError, "line " + std::to_string(line.number) + ": weight must be positive", {line.number});
    if (line.tokens[0] == line.tokens[1])
      throw Error(Errc::ParseError, "line " + std::to_string(line.number) + ": self-loop", {line.number});
    g.add_edge(line.tokens[0], line.tokens[1], w);
  }
  if (g.vertices.empty()) throw Error(Errc::ParseError, "edge list is empty", {0});
  return g;
}

InputKind detect_kind(std::string_view text) {
  const std::vector<Line> lines = tokenize(text);
  if (lines.empty()) throw Error(Errc::ParseError, "input is empty", {0});
  const auto& first = lines.front().tokens;
  if (first[0].starts_with("labels:") || first.size() == 1) return InputKind::Matrix;
  return InputKind::EdgeList;
}

FiniteMetricSpace parse_space(std::string_view text) {
  if (detect_kind(text) == InputKind::Matrix) return parse_matrix(text);
  return ultrametric_from_graph(parse_edge_list(text));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path, {0});
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string format_matrix(const FiniteMetricSpace& x) {
  std::ostringstream os;
  os.precision(17);
  os << "labels:";
  for (const auto& l : x.labels()) os << ' ' << l;
  os << '\n' << x.size() << '\n';
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) os << (j ? " " : "") << x.distance(i, j);
    os << '\n';
  }
  return os.str();
}

}  // namespace pgap::io
