#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>

#include "gossip/graph.hpp"

namespace gossip {

using AnyGraph = std::variant<UndirectedGraph, DirectedGraph>;

// Edge-list text format:
//
//   n m u|d
//   a b        (m lines, 0-indexed, space separated)
//
// Lines starting with '#' are comments; the trailing newline is optional.
// Labels that are not all integers in [0, n) are remapped to 0..n-1 in
// order of first appearance.

AnyGraph read_edge_list(std::istream& in);
AnyGraph read_edge_list(const std::filesystem::path& path);

void write_edge_list(std::ostream& out, const UndirectedGraph& g);
void write_edge_list(std::ostream& out, const DirectedGraph& g);
void write_edge_list(std::ostream& out, const AnyGraph& g);
void write_edge_list(const std::filesystem::path& path, const AnyGraph& g);

std::string to_edge_list(const AnyGraph& g);

}  // namespace gossip
