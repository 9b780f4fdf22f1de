#include "cfcolor/generators.hpp"

#include "cfcolor/error.hpp"
#include "cfcolor/rng.hpp"

#include <array>
#include <string>
#include <unordered_set>

namespace cfcolor {

namespace {

constexpr std::array<std::pair<Family, std::string_view>, 8> kFamilyNames{{
    {Family::cycle, "cycle"},
    {Family::path, "path"},
    {Family::complete, "complete"},
    {Family::complete_bipartite, "complete_bipartite"},
    {Family::star, "star"},
    {Family::random_regular, "random_regular"},
    {Family::gnp, "gnp"},
    {Family::mols_graph, "mols_graph"},
}};

[[noreturn]] void infeasible(const std::string& what)
{
    throw Error(ErrorKind::infeasible, what);
}

Graph cycle(std::size_t n)
{
    if (n < 3)
        infeasible("cycle needs n >= 3");
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i)
        edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % n));
    return Graph::build(edges, n);
}

Graph path(std::size_t n)
{
    if (n < 1)
        infeasible("path needs n >= 1");
    std::vector<Edge> edges;
    for (std::size_t i = 0; i + 1 < n; ++i)
        edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(i + 1));
    return Graph::build(edges, n);
}

Graph complete(std::size_t n)
{
    std::vector<Edge> edges;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    return Graph::build(edges, n);
}

Graph complete_bipartite(std::size_t a, std::size_t b)
{
    std::vector<Edge> edges;
    for (std::size_t u = 0; u < a; ++u)
        for (std::size_t v = 0; v < b; ++v)
            edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(a + v));
    return Graph::build(edges, a + b);
}

Graph star(std::size_t n)
{
    if (n < 2)
        infeasible("star needs n >= 2");
    return complete_bipartite(1, n - 1);
}

// Configuration model: stubs are paired one pair at a time, uniformly among
// the remaining stubs; a pair that would create a loop or a repeated edge is
// redrawn. If no valid pair turns up the whole pairing restarts.
Graph random_regular(std::size_t n, std::size_t d, std::uint64_t seed, std::size_t max_retries)
{
    if (d >= n)
        infeasible("random_regular needs d < n (got n=" + std::to_string(n) + ", d=" + std::to_string(d) + ")");
    if ((n * d) % 2 != 0)
        infeasible("random_regular needs n*d even (got n=" + std::to_string(n) + ", d=" + std::to_string(d) + ")");

    for (std::size_t attempt = 0; attempt <= max_retries; ++attempt) {
        SplitMix64 rng(derive_seed(seed, {attempt}));
        std::vector<Vertex> stubs;
        stubs.reserve(n * d);
        for (std::size_t v = 0; v < n; ++v)
            stubs.insert(stubs.end(), d, static_cast<Vertex>(v));

        std::unordered_set<std::uint64_t> present;
        std::vector<Edge> edges;
        edges.reserve(n * d / 2);
        bool stuck = false;
        while (!stubs.empty() && !stuck) {
            const std::size_t budget = 64 + 4 * stubs.size();
            bool paired = false;
            for (std::size_t t = 0; t < budget; ++t) {
                std::size_t i = uniform_below(rng, stubs.size());
                std::size_t j = uniform_below(rng, stubs.size());
                Vertex u = stubs[i];
                Vertex v = stubs[j];
                if (i == j || u == v)
                    continue;
                const std::uint64_t key = std::uint64_t(std::min(u, v)) * n + std::max(u, v);
                if (!present.insert(key).second)
                    continue;
                edges.emplace_back(u, v);
                if (i < j)
                    std::swap(i, j);
                stubs[i] = stubs.back();
                stubs.pop_back();
                stubs[j] = stubs.back();
                stubs.pop_back();
                paired = true;
                break;
            }
            stuck = !paired;
        }
        if (!stuck)
            return Graph::build(edges, n);
    }
    infeasible("random_regular failed after " + std::to_string(max_retries + 1) + " attempts (" +
               std::to_string(max_retries) + " retries)");
}

Graph gnp(std::size_t n, double p, std::uint64_t seed)
{
    if (!(p >= 0.0 && p <= 1.0))
        infeasible("gnp needs 0 <= p <= 1");
    SplitMix64 rng(derive_seed(seed, {0x676e70}));
    std::vector<Edge> edges;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            if (uniform_open_closed(rng) <= p && p > 0.0)
                edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    return Graph::build(edges, n);
}

bool is_prime(std::size_t q)
{
    if (q < 2)
        return false;
    for (std::size_t f = 2; f * f <= q; ++f)
        if (q % f == 0)
            return false;
    return true;
}

// Point-line incidence graph of the net built from k mutually orthogonal
// Latin squares L_a(x, y) = a*x + y (mod q), a = 1..k. Points are the q^2
// cells (vertex x*q + y); the lines are the q rows, the q columns and, for
// every square, its q symbol classes. Points have degree k+2, lines degree q,
// and two points share at most one line.
Graph mols_graph(std::size_t q, std::size_t k)
{
    if (!is_prime(q))
        infeasible("mols_graph needs a prime order q");
    if (k < 1 || k + 1 > q)
        infeasible("mols_graph needs 1 <= k <= q-1");
    const std::size_t points = q * q;
    std::vector<Edge> edges;
    auto line = [&](std::size_t cls, std::size_t idx) { return static_cast<Vertex>(points + cls * q + idx); };
    for (std::size_t x = 0; x < q; ++x) {
        for (std::size_t y = 0; y < q; ++y) {
            const auto cell = static_cast<Vertex>(x * q + y);
            edges.emplace_back(cell, line(0, x));
            edges.emplace_back(cell, line(1, y));
            for (std::size_t a = 1; a <= k; ++a)
                edges.emplace_back(cell, line(a + 1, (a * x + y) % q));
        }
    }
    return Graph::build(edges, points + (k + 2) * q);
}

} // namespace

std::string_view to_string(Family family)
{
    for (auto [f, name] : kFamilyNames)
        if (f == family)
            return name;
    return "unknown";
}

std::optional<Family> parse_family(std::string_view name)
{
    for (auto [f, known] : kFamilyNames)
        if (known == name)
            return f;
    return std::nullopt;
}

Graph generate(const GeneratorSpec& spec)
{
    switch (spec.family) {
    case Family::cycle: return cycle(spec.n);
    case Family::path: return path(spec.n);
    case Family::complete: return complete(spec.n);
    case Family::complete_bipartite: return complete_bipartite(spec.a, spec.b);
    case Family::star: return star(spec.n);
    case Family::random_regular: return random_regular(spec.n, spec.d, spec.seed, spec.max_retries);
    case Family::gnp: return gnp(spec.n, spec.p, spec.seed);
    case Family::mols_graph: return mols_graph(spec.q, spec.k);
    }
    throw Error(ErrorKind::invalid_input, "unknown graph family");
}

} // namespace cfcolor
