#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "polymerdyn/graph.hpp"

namespace polymerdyn {

// Edge-list text format:
//   [multigraph]        optional tag line; loops/parallel edges allowed only then
//   n m
//   u v                 m lines, 0-indexed
// Blank lines and lines starting with '#' are ignored.
using AnyGraph = std::variant<SimpleGraph, MultiGraph>;

AnyGraph read_edge_list(std::istream& in);
AnyGraph read_edge_list_file(const std::string& path);
// Throws ValidationError if the file is tagged as a multigraph.
SimpleGraph read_simple_graph_file(const std::string& path);

void write_edge_list(std::ostream& out, const SimpleGraph& g);
void write_edge_list(std::ostream& out, const MultiGraph& g);

// Whitespace-separated nonnegative integers.
std::vector<long> read_degree_sequence(std::istream& in);
std::vector<long> read_degree_sequence_file(const std::string& path);

}  // namespace polymerdyn
