#include "cfcolor/graph_io.hpp"

#include "cfcolor/error.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace cfcolor {

namespace {

[[noreturn]] void parse_error(std::size_t line, const std::string& reason)
{
    throw Error(ErrorKind::parse, "line " + std::to_string(line) + ": " + reason);
}

std::vector<std::string_view> tokens(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
            ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r')
            ++j;
        if (j > i)
            out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

std::optional<std::uint64_t> to_index(std::string_view tok)
{
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        return std::nullopt;
    return value;
}

Graph read_edge_list(std::istream& in)
{
    std::vector<Edge> edges;
    std::uint64_t n = 0;
    std::string line;
    for (std::size_t ln = 1; std::getline(in, line); ++ln) {
        std::string_view view = line;
        if (auto hash = view.find('#'); hash != std::string_view::npos) {
            auto comment = tokens(view.substr(hash + 1));
            if (comment.size() == 2 && comment[0] == "vertices") {
                auto count = to_index(comment[1]);
                if (!count)
                    parse_error(ln, "bad vertex count in '# vertices' directive");
                n = std::max(n, *count);
            }
            view = view.substr(0, hash);
        }
        auto toks = tokens(view);
        if (toks.empty())
            continue;
        if (toks.size() != 2)
            parse_error(ln, "expected 'u v', got " + std::to_string(toks.size()) + " fields");
        auto u = to_index(toks[0]);
        auto v = to_index(toks[1]);
        if (!u || !v)
            parse_error(ln, "vertex indices must be non-negative integers");
        if (*u == *v)
            parse_error(ln, "self-loop at vertex " + std::to_string(*u));
        if (std::max(*u, *v) >= 0xffffffffULL)
            parse_error(ln, "vertex index too large");
        n = std::max(n, std::max(*u, *v) + 1);
        edges.emplace_back(static_cast<Vertex>(*u), static_cast<Vertex>(*v));
    }
    return Graph::build(edges, n);
}

Graph read_dimacs(std::istream& in)
{
    std::vector<Edge> edges;
    std::optional<std::uint64_t> n;
    std::string line;
    for (std::size_t ln = 1; std::getline(in, line); ++ln) {
        auto toks = tokens(line);
        if (toks.empty() || toks[0] == "c")
            continue;
        if (toks[0] == "p") {
            if (n)
                parse_error(ln, "duplicate 'p' header");
            if (toks.size() != 4 || (toks[1] != "edge" && toks[1] != "col"))
                parse_error(ln, "expected 'p edge <n> <m>'");
            auto count = to_index(toks[2]);
            if (!count || !to_index(toks[3]))
                parse_error(ln, "bad counts in 'p' header");
            n = *count;
            continue;
        }
        if (toks[0] == "e") {
            if (!n)
                parse_error(ln, "edge before 'p' header");
            if (toks.size() != 3)
                parse_error(ln, "expected 'e <u> <v>'");
            auto u = to_index(toks[1]);
            auto v = to_index(toks[2]);
            if (!u || !v)
                parse_error(ln, "vertex indices must be positive integers");
            if (*u < 1 || *v < 1 || *u > *n || *v > *n)
                parse_error(ln, "vertex out of range [1," + std::to_string(*n) + "]");
            if (*u == *v)
                parse_error(ln, "self-loop at vertex " + std::to_string(*u));
            edges.emplace_back(static_cast<Vertex>(*u - 1), static_cast<Vertex>(*v - 1));
            continue;
        }
        parse_error(ln, "unknown line type '" + std::string(toks[0]) + "'");
    }
    if (!n)
        throw Error(ErrorKind::parse, "missing 'p edge' header");
    return Graph::build(edges, *n);
}

} // namespace

std::optional<GraphFormat> parse_graph_format(std::string_view name)
{
    if (name == "edge_list" || name == "edgelist")
        return GraphFormat::edge_list;
    if (name == "dimacs_col" || name == "dimacs" || name == "col")
        return GraphFormat::dimacs_col;
    return std::nullopt;
}

GraphFormat format_from_path(const std::filesystem::path& path)
{
    auto ext = path.extension().string();
    if (ext == ".col" || ext == ".dimacs")
        return GraphFormat::dimacs_col;
    return GraphFormat::edge_list;
}

Graph read_graph(std::istream& in, GraphFormat format)
{
    return format == GraphFormat::edge_list ? read_edge_list(in) : read_dimacs(in);
}

Graph read_graph(const std::filesystem::path& path, GraphFormat format)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::invalid_input, "cannot open graph file " + path.string());
    return read_graph(in, format);
}

void write_graph(std::ostream& out, const Graph& g, GraphFormat format)
{
    const auto edges = g.edges();
    if (format == GraphFormat::dimacs_col) {
        out << "p edge " << g.vertex_count() << ' ' << edges.size() << '\n';
        for (auto [u, v] : edges)
            out << "e " << u + 1 << ' ' << v + 1 << '\n';
        return;
    }
    // Only needed when trailing vertices would otherwise be lost.
    Vertex top = 0;
    for (auto [u, v] : edges)
        top = std::max(top, v);
    if (g.vertex_count() > 0 && (edges.empty() || top + 1 < g.vertex_count()))
        out << "# vertices " << g.vertex_count() << '\n';
    for (auto [u, v] : edges)
        out << u << ' ' << v << '\n';
}

void write_graph(const std::filesystem::path& path, const Graph& g, GraphFormat format)
{
    std::ofstream out(path);
    if (!out)
        throw Error(ErrorKind::invalid_input, "cannot open " + path.string() + " for writing");
    write_graph(out, g, format);
}

} // namespace cfcolor
