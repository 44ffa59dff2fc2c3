#pragma once

#include <string>
#include <string_view>

#include "pgap/metric.hpp"

namespace pgap::io {

// Matrix format: optional `labels: a b c`, then a line holding n, then n
// rows of n whitespace-separated numbers. Blank lines and `#` comments are
// skipped. Throws ParseError (indices = {line}) or the validation errors.
FiniteMetricSpace parse_matrix(std::string_view text);

// Edge list: one `u v w` per line with w > 0; `#` comments allowed.
WeightedGraph parse_edge_list(std::string_view text);

enum class InputKind { Matrix, EdgeList };

// Matrix when the first meaningful line is `labels:` or a single token.
InputKind detect_kind(std::string_view text);

// Reads a space from either format; edge lists become minimax-path spaces.
FiniteMetricSpace parse_space(std::string_view text);

std::string read_file(const std::string& path);

std::string format_matrix(const FiniteMetricSpace& x);

}  // namespace pgap::io
