#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace cfcolor {

// Vertex indices 0..n-1 are also the fixed linear ordering of the vertex set.
using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

// Immutable simple undirected graph in CSR form. Neighbour lists are strictly
// increasing and symmetric.
class Graph {
public:
    Graph() = default;

    // Collapses duplicate edges (in either orientation). Throws on self-loops
    // and out-of-range endpoints.
    static Graph build(std::span<const Edge> edges, std::size_t n);

    std::size_t vertex_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::size_t edge_count() const noexcept { return targets_.size() / 2; }

    std::span<const Vertex> neighbours(Vertex v) const
    {
        return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
    }
    std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

    bool adjacent(Vertex u, Vertex v) const;

    // Every edge once as (u, v) with u < v, sorted lexicographically.
    std::vector<Edge> edges() const;

    bool operator==(const Graph&) const = default;

private:
    std::vector<std::size_t> offsets_;
    std::vector<Vertex> targets_;
};

struct DegreeStats {
    std::size_t min_degree = 0;
    std::size_t max_degree = 0;
    bool isolated = false;
};

DegreeStats degree_stats(const Graph& g);

bool is_regular(const Graph& g);

// Connected components, each sorted by vertex index; components ordered by
// their smallest vertex.
std::vector<std::vector<Vertex>> components(const Graph& g);

bool is_connected(const Graph& g);

// Subgraph induced by `vertices`; vertex vertices[i] becomes i.
Graph induced_subgraph(const Graph& g, std::span<const Vertex> vertices);

} // namespace cfcolor
