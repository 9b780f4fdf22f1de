#include "cfcolor/error.hpp"
#include "cfcolor/generators.hpp"
#include "cfcolor/graph.hpp"
#include "cfcolor/graph_io.hpp"
#include "cfcolor/rng.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace cfcolor;

namespace {

void expect_well_formed(const Graph& g)
{
    std::size_t directed = 0;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        auto nb = g.neighbours(v);
        directed += nb.size();
        for (std::size_t i = 0; i < nb.size(); ++i) {
            ASSERT_NE(nb[i], v) << "self-loop";
            ASSERT_LT(nb[i], g.vertex_count());
            if (i > 0)
                ASSERT_LT(nb[i - 1], nb[i]) << "neighbour list not strictly increasing";
            ASSERT_TRUE(g.adjacent(nb[i], v)) << "asymmetric adjacency";
        }
    }
    EXPECT_EQ(directed, 2 * g.edge_count());
}

GeneratorSpec family(Family f, std::size_t n)
{
    GeneratorSpec spec;
    spec.family = f;
    spec.n = n;
    return spec;
}

} // namespace

TEST(Build, Triangle)
{
    std::vector<Edge> edges{{0, 1}, {1, 2}, {2, 0}};
    auto g = Graph::build(edges, 3);
    EXPECT_EQ(g.edge_count(), 3u);
    auto stats = degree_stats(g);
    EXPECT_EQ(stats.min_degree, 2u);
    EXPECT_EQ(stats.max_degree, 2u);
    expect_well_formed(g);
}

TEST(Build, DuplicateEdgesCollapse)
{
    std::vector<Edge> edges{{0, 1}, {1, 0}};
    auto g = Graph::build(edges, 2);
    EXPECT_EQ(g.edge_count(), 1u);
}

TEST(Build, RejectsSelfLoop)
{
    std::vector<Edge> edges{{0, 0}};
    try {
        Graph::build(edges, 1);
        FAIL() << "expected rejection";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::invalid_input);
        EXPECT_NE(std::string(e.what()).find("vertex 0"), std::string::npos);
    }
}

TEST(Build, RejectsOutOfRange)
{
    std::vector<Edge> edges{{0, 3}};
    EXPECT_THROW(Graph::build(edges, 3), Error);
}

TEST(DegreeStats, NamedGraphs)
{
    auto c5 = generate(family(Family::cycle, 5));
    auto s = degree_stats(c5);
    EXPECT_EQ(s.min_degree, 2u);
    EXPECT_EQ(s.max_degree, 2u);
    EXPECT_FALSE(s.isolated);

    auto star = generate(family(Family::star, 4));
    s = degree_stats(star);
    EXPECT_EQ(s.min_degree, 1u);
    EXPECT_EQ(s.max_degree, 3u);
    EXPECT_FALSE(s.isolated);

    auto empty = Graph::build({}, 3);
    s = degree_stats(empty);
    EXPECT_EQ(s.min_degree, 0u);
    EXPECT_EQ(s.max_degree, 0u);
    EXPECT_TRUE(s.isolated);
}

TEST(Generate, Cycle)
{
    auto g = generate(family(Family::cycle, 5));
    EXPECT_EQ(g.vertex_count(), 5u);
    EXPECT_EQ(g.edge_count(), 5u);
    EXPECT_TRUE(is_regular(g));
}

TEST(Generate, RandomRegular)
{
    GeneratorSpec spec;
    spec.family = Family::random_regular;
    spec.n = 200;
    spec.d = 20;
    spec.seed = 1;
    auto g = generate(spec);
    EXPECT_EQ(g.vertex_count(), 200u);
    EXPECT_EQ(g.edge_count(), 2000u);
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        EXPECT_EQ(g.degree(v), 20u);
    expect_well_formed(g);
    EXPECT_EQ(generate(spec), g) << "same seed must give the same graph";
    spec.seed = 2;
    EXPECT_NE(generate(spec), g);
}

TEST(Generate, RandomRegularRejectsOddDegreeSum)
{
    GeneratorSpec spec;
    spec.family = Family::random_regular;
    spec.n = 5;
    spec.d = 3;
    try {
        generate(spec);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::infeasible);
    }
    spec.n = 4;
    spec.d = 4;
    EXPECT_THROW(generate(spec), Error);
}

TEST(Generate, RandomRegularRetryCapReported)
{
    // K_6 is the only 5-regular graph on 6 vertices; a single attempt may
    // still get stuck, and then the message must name the retry count.
    GeneratorSpec spec;
    spec.family = Family::random_regular;
    spec.n = 6;
    spec.d = 5;
    spec.max_retries = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        spec.seed = seed;
        try {
            auto g = generate(spec);
            EXPECT_EQ(g.edge_count(), 15u);
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::infeasible);
            EXPECT_NE(std::string(e.what()).find("retries"), std::string::npos);
        }
    }
}

TEST(Generate, StarAndBipartite)
{
    auto star = generate(family(Family::star, 4));
    EXPECT_EQ(star.edge_count(), 3u);
    EXPECT_EQ(star.degree(0), 3u);

    GeneratorSpec spec;
    spec.family = Family::complete_bipartite;
    spec.a = 2;
    spec.b = 3;
    auto k23 = generate(spec);
    EXPECT_EQ(k23.edge_count(), 6u);
    EXPECT_FALSE(k23.adjacent(0, 1));
    EXPECT_TRUE(k23.adjacent(0, 4));
}

TEST(Generate, GnpExtremes)
{
    GeneratorSpec spec;
    spec.family = Family::gnp;
    spec.n = 7;
    spec.p = 1.0;
    EXPECT_EQ(generate(spec).edge_count(), 21u);
    spec.p = 0.0;
    EXPECT_EQ(generate(spec).edge_count(), 0u);
    spec.p = 1.5;
    EXPECT_THROW(generate(spec), Error);
}

TEST(Generate, MolsGraphStructure)
{
    GeneratorSpec spec;
    spec.family = Family::mols_graph;
    spec.q = 3;
    spec.k = 2;
    auto g = generate(spec);
    // 9 cells plus (k + 2) * q lines.
    ASSERT_EQ(g.vertex_count(), 9u + 12u);
    for (Vertex cell = 0; cell < 9; ++cell)
        EXPECT_EQ(g.degree(cell), 4u);
    for (Vertex line = 9; line < g.vertex_count(); ++line)
        EXPECT_EQ(g.degree(line), 3u);
    // With k = q - 1 the net is an affine plane: every two cells share
    // exactly one line.
    for (Vertex u = 0; u < 9; ++u)
        for (Vertex v = u + 1; v < 9; ++v) {
            int common = 0;
            for (Vertex w : g.neighbours(u))
                common += g.adjacent(w, v);
            EXPECT_EQ(common, 1) << u << "," << v;
        }
    spec.q = 4;
    EXPECT_THROW(generate(spec), Error);
    spec.q = 3;
    spec.k = 3;
    EXPECT_THROW(generate(spec), Error);
}

TEST(Generate, EveryFamilyWellFormed)
{
    for (auto f : {Family::cycle, Family::path, Family::complete, Family::star}) {
        auto g = generate(family(f, 6));
        expect_well_formed(g);
    }
    GeneratorSpec gnp;
    gnp.family = Family::gnp;
    gnp.n = 30;
    gnp.p = 0.3;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        gnp.seed = seed;
        expect_well_formed(generate(gnp));
    }
}

TEST(Components, SplitAndInduced)
{
    std::vector<Edge> edges{{0, 1}, {2, 3}, {3, 4}};
    auto g = Graph::build(edges, 6);
    auto comps = components(g);
    ASSERT_EQ(comps.size(), 3u);
    EXPECT_EQ(comps[1], (std::vector<Vertex>{2, 3, 4}));
    EXPECT_FALSE(is_connected(g));
    auto sub = induced_subgraph(g, comps[1]);
    EXPECT_EQ(sub.vertex_count(), 3u);
    EXPECT_EQ(sub.edge_count(), 2u);
    EXPECT_TRUE(sub.adjacent(0, 1));
}

TEST(GraphIo, DimacsTriangle)
{
    std::istringstream in("c triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n");
    auto g = read_graph(in, GraphFormat::dimacs_col);
    EXPECT_EQ(g.vertex_count(), 3u);
    EXPECT_EQ(g.edge_count(), 3u);
    EXPECT_TRUE(g.adjacent(0, 2));
}

TEST(GraphIo, EdgeListPath)
{
    std::istringstream in("# P3\n0 1\n1 2\n");
    auto g = read_graph(in, GraphFormat::edge_list);
    EXPECT_EQ(g.vertex_count(), 3u);
    EXPECT_EQ(g.edge_count(), 2u);
    EXPECT_EQ(g.degree(1), 2u);
}

TEST(GraphIo, DimacsOutOfRangeNamesLine)
{
    std::istringstream in("p edge 3 3\ne 1 4\n");
    try {
        read_graph(in, GraphFormat::dimacs_col);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::parse);
        EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("out of range"), std::string::npos);
    }
}

TEST(GraphIo, MalformedInputs)
{
    std::istringstream missing_header("e 1 2\n");
    EXPECT_THROW(read_graph(missing_header, GraphFormat::dimacs_col), Error);
    std::istringstream junk("0 1\n1 x\n");
    try {
        read_graph(junk, GraphFormat::edge_list);
        FAIL();
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
    }
    std::istringstream loop("0 0\n");
    EXPECT_THROW(read_graph(loop, GraphFormat::edge_list), Error);
}

TEST(GraphIo, DimacsEmitsSortedEdges)
{
    std::vector<Edge> edges{{2, 1}, {0, 2}, {1, 0}};
    auto g = Graph::build(edges, 3);
    std::ostringstream out;
    write_graph(out, g, GraphFormat::dimacs_col);
    EXPECT_EQ(out.str(), "p edge 3 3\ne 1 2\ne 1 3\ne 2 3\n");
}

// read(write(G)) == G, same labelling, for both formats, over random graphs
// including ones with isolated (and trailing isolated) vertices.
TEST(GraphIo, RoundTripProperty)
{
    SplitMix64 rng(99);
    for (int sample = 0; sample < 200; ++sample) {
        const std::size_t n = 1 + uniform_below(rng, 25);
        const double p = uniform_open_closed(rng) * 0.5;
        std::vector<Edge> edges;
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u + 1; v < n; ++v)
                if (uniform_open_closed(rng) <= p)
                    edges.emplace_back(u, v);
        auto g = Graph::build(edges, n);
        for (auto format : {GraphFormat::edge_list, GraphFormat::dimacs_col}) {
            std::stringstream io;
            write_graph(io, g, format);
            EXPECT_EQ(read_graph(io, format), g) << "sample " << sample;
        }
    }
}
