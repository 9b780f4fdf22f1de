#include "cfcolor/graph.hpp"

#include "cfcolor/error.hpp"

#include <algorithm>
#include <string>

namespace cfcolor {

Graph Graph::build(std::span<const Edge> edges, std::size_t n)
{
    std::vector<Edge> directed;
    directed.reserve(edges.size() * 2);
    for (auto [u, v] : edges) {
        if (u >= n || v >= n)
            throw Error(ErrorKind::out_of_range,
                        "edge (" + std::to_string(u) + "," + std::to_string(v) +
                            ") has an endpoint outside [0," + std::to_string(n) + ")");
        if (u == v)
            throw Error(ErrorKind::invalid_input, "self-loop at vertex " + std::to_string(u));
        directed.emplace_back(u, v);
        directed.emplace_back(v, u);
    }
    std::sort(directed.begin(), directed.end());
    directed.erase(std::unique(directed.begin(), directed.end()), directed.end());

    Graph g;
    g.offsets_.assign(n + 1, 0);
    g.targets_.reserve(directed.size());
    for (auto [u, v] : directed) {
        ++g.offsets_[u + 1];
        g.targets_.push_back(v);
    }
    for (std::size_t i = 0; i < n; ++i)
        g.offsets_[i + 1] += g.offsets_[i];
    return g;
}

bool Graph::adjacent(Vertex u, Vertex v) const
{
    auto nb = neighbours(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const
{
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (Vertex u = 0; u < vertex_count(); ++u)
        for (Vertex v : neighbours(u))
            if (u < v)
                out.emplace_back(u, v);
    return out;
}

DegreeStats degree_stats(const Graph& g)
{
    DegreeStats stats;
    const std::size_t n = g.vertex_count();
    if (n == 0)
        return stats;
    stats.min_degree = g.degree(0);
    for (Vertex v = 0; v < n; ++v) {
        stats.min_degree = std::min(stats.min_degree, g.degree(v));
        stats.max_degree = std::max(stats.max_degree, g.degree(v));
    }
    stats.isolated = stats.min_degree == 0;
    return stats;
}

bool is_regular(const Graph& g)
{
    auto stats = degree_stats(g);
    return stats.min_degree == stats.max_degree;
}

std::vector<std::vector<Vertex>> components(const Graph& g)
{
    const std::size_t n = g.vertex_count();
    std::vector<char> seen(n, 0);
    std::vector<std::vector<Vertex>> out;
    std::vector<Vertex> stack;
    for (Vertex s = 0; s < n; ++s) {
        if (seen[s])
            continue;
        std::vector<Vertex> comp;
        stack.push_back(s);
        seen[s] = 1;
        while (!stack.empty()) {
            Vertex u = stack.back();
            stack.pop_back();
            comp.push_back(u);
            for (Vertex w : g.neighbours(u))
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

bool is_connected(const Graph& g)
{
    return components(g).size() <= 1;
}

Graph induced_subgraph(const Graph& g, std::span<const Vertex> vertices)
{
    std::vector<std::int64_t> relabel(g.vertex_count(), -1);
    for (std::size_t i = 0; i < vertices.size(); ++i)
        relabel[vertices[i]] = static_cast<std::int64_t>(i);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (Vertex w : g.neighbours(vertices[i]))
            if (relabel[w] > static_cast<std::int64_t>(i))
                edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(relabel[w]));
    return Graph::build(edges, vertices.size());
}

} // namespace cfcolor
