#pragma once

#include "cfcolor/graph.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string_view>

namespace cfcolor {

enum class GraphFormat { edge_list, dimacs_col };

std::optional<GraphFormat> parse_graph_format(std::string_view name);

// Guess from the extension: ".col" / ".dimacs" are DIMACS, anything else is
// an edge list.
GraphFormat format_from_path(const std::filesystem::path& path);

// Edge list: "u v" per line, 0-indexed, '#' starts a comment. The vertex
// count is max index + 1 unless a "# vertices N" line raises it.
// DIMACS: "p edge n m", "e u v" (1-indexed), 'c' comment lines.
// Parse failures throw Error(ErrorKind::parse) naming the line number.
Graph read_graph(std::istream& in, GraphFormat format);
Graph read_graph(const std::filesystem::path& path, GraphFormat format);

// Edges are emitted once each, sorted by (u, v).
void write_graph(std::ostream& out, const Graph& g, GraphFormat format);
void write_graph(const std::filesystem::path& path, const Graph& g, GraphFormat format);

} // namespace cfcolor
