#pragma once

#include <iosfwd>
#include <string>

#include "mw/graph.hpp"
#include "mw/structure.hpp"

namespace mw {

// Graph file: line 1 "n m", then m lines "u v" (1-based, u != v, duplicates
// rejected).
Graph read_graph(std::istream& in);
Graph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const Graph& g);

// Structure file: header "structure n", then blocks
//   unary NAME: v1 v2 ...
//   binary NAME: u1 v1; u2 v2; ...
BinaryStructure read_structure(std::istream& in);
BinaryStructure read_structure_file(const std::string& path);
void write_structure(std::ostream& out, const BinaryStructure& s);

// Order file: n lines, one vertex id per line, a permutation (rank 1 first).
std::vector<Vertex> read_order(std::istream& in, int n);
std::vector<Vertex> read_order_file(const std::string& path, int n);
void write_order(std::ostream& out, const std::vector<Vertex>& order);

std::string read_text_file(const std::string& path);

}  // namespace mw
