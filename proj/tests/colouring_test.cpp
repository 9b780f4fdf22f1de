#include "cfcolor/colouring.hpp"
#include "cfcolor/error.hpp"
#include "cfcolor/generators.hpp"
#include "cfcolor/rng.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <sstream>

using namespace cfcolor;

namespace {

Graph named(Family f, std::size_t n)
{
    GeneratorSpec spec;
    spec.family = f;
    spec.n = n;
    return generate(spec);
}

PartialColouring raw(std::vector<Colour> c) { return PartialColouring::from_raw(std::move(c)); }

std::vector<int> as_ints(const PartialColouring& c)
{
    return {c.raw().begin(), c.raw().end()};
}

} // namespace

TEST(PartialColouring, PaletteTracksAssignments)
{
    PartialColouring c(4);
    c.assign(0, 5);
    c.assign(1, 2);
    c.assign(2, 5);
    EXPECT_EQ(c.palette(), (std::vector<Colour>{2, 5}));
    EXPECT_EQ(c.class_size(5), 2u);
    c.assign(2, 7);
    EXPECT_EQ(c.palette(), (std::vector<Colour>{2, 5, 7}));
    c.clear(1);
    EXPECT_EQ(c.palette(), (std::vector<Colour>{5, 7}));
    EXPECT_EQ(c.coloured_count(), 2u);
    EXPECT_FALSE(c.is_total());
    EXPECT_THROW(c.assign(3, 0), Error);
}

TEST(PartialColouring, PaletteRederivable)
{
    SplitMix64 rng(5);
    PartialColouring c(30);
    for (int step = 0; step < 2000; ++step) {
        Vertex v = static_cast<Vertex>(uniform_below(rng, 30));
        if (uniform_below(rng, 4) == 0)
            c.clear(v);
        else
            c.assign(v, 1 + static_cast<Colour>(uniform_below(rng, 8)));
    }
    std::vector<Colour> derived;
    for (Colour x : c.raw())
        if (x != kUncoloured)
            derived.push_back(x);
    std::sort(derived.begin(), derived.end());
    derived.erase(std::unique(derived.begin(), derived.end()), derived.end());
    EXPECT_EQ(c.palette(), derived);
    EXPECT_EQ(PartialColouring::from_raw({c.raw().begin(), c.raw().end()}).palette(), derived);
}

TEST(IsProper, Examples)
{
    auto tri = named(Family::complete, 3);
    EXPECT_TRUE(is_proper(tri, raw({1, 2, 3})).proper);
    auto bad = is_proper(tri, raw({1, 1, 2}));
    EXPECT_FALSE(bad.proper);
    ASSERT_EQ(bad.violations.size(), 1u);
    EXPECT_EQ(bad.violations[0], Edge(0, 1));
    auto p3 = named(Family::path, 3);
    EXPECT_TRUE(is_proper(p3, raw({1, kUncoloured, 1})).proper);
}

TEST(UniqueColourCount, Examples)
{
    auto c4 = named(Family::cycle, 4);
    EXPECT_EQ(unique_colour_count(c4, raw({1, 2, 1, 2}), 0), 0u);
    EXPECT_EQ(unique_colour_count(c4, raw({1, 2, 3, 2}), 1), 2u);
    auto c5 = named(Family::cycle, 5);
    for (Vertex v = 0; v < 5; ++v)
        EXPECT_EQ(unique_colour_count(c5, raw({1, 2, 3, 4, 5}), v), 2u);
    EXPECT_THROW(unique_colour_count(c5, raw({1, 2, 3, 4, 5}), 5), Error);
}

TEST(UniqueColourCount, UncolouredContributeNothing)
{
    auto k4 = named(Family::complete, 4);
    EXPECT_EQ(unique_colour_count(k4, raw({1, 2, kUncoloured, kUncoloured}), 0), 1u);
}

TEST(VerifyHConflictFree, Examples)
{
    auto c5 = named(Family::cycle, 5);
    auto r = verify_h_conflict_free(c5, raw({1, 2, 3, 4, 5}), 2);
    EXPECT_TRUE(r.h_cf_ok);
    EXPECT_EQ(r.colours_used, 5u);

    auto c4 = named(Family::cycle, 4);
    r = verify_h_conflict_free(c4, raw({1, 2, 1, 2}), 1);
    EXPECT_FALSE(r.h_cf_ok);
    EXPECT_TRUE(r.proper);
    for (auto u : r.unique_counts)
        EXPECT_EQ(u, 0u);

    auto star = named(Family::star, 4);
    r = verify_h_conflict_free(star, raw({1, 2, 2, 3}), 1);
    EXPECT_TRUE(r.h_cf_ok);
}

TEST(VerifyHConflictFree, RequiresTotal)
{
    auto c5 = named(Family::cycle, 5);
    auto r = verify_h_conflict_free(c5, raw({1, 2, 3, 4, kUncoloured}), 1);
    EXPECT_FALSE(r.total);
    EXPECT_FALSE(r.h_cf_ok);
}

TEST(VerifyHConflictFree, IsolatedVertexRejected)
{
    std::vector<Edge> edges{{0, 1}};
    auto g = Graph::build(edges, 3);
    try {
        verify_h_conflict_free(g, raw({1, 2, 3}), 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::precondition);
    }
    EXPECT_THROW(verify_odd(g, raw({1, 2, 3})), Error);
}

TEST(VerifyOdd, Examples)
{
    auto c4 = named(Family::cycle, 4);
    auto r = verify_odd(c4, raw({1, 2, 1, 2}));
    EXPECT_FALSE(r.odd_all_ok);
    for (bool ok : r.odd_ok)
        EXPECT_FALSE(ok);

    auto c5 = named(Family::cycle, 5);
    EXPECT_TRUE(verify_odd(c5, raw({1, 2, 3, 4, 5})).odd_all_ok);

    // Odd degree everywhere: any proper colouring is odd.
    auto k4 = named(Family::complete, 4);
    EXPECT_TRUE(verify_odd(k4, raw({1, 2, 3, 4})).odd_all_ok);
    GeneratorSpec spec;
    spec.family = Family::complete_bipartite;
    spec.a = 3;
    spec.b = 3;
    EXPECT_TRUE(verify_odd(generate(spec), raw({1, 1, 1, 2, 2, 2})).odd_all_ok);
}

TEST(VerifySquare, Examples)
{
    auto c5 = named(Family::cycle, 5);
    EXPECT_TRUE(verify_square(c5, raw({1, 2, 3, 4, 5})));
    // Every colouring of C_5 with colours in [4] fails.
    std::vector<Colour> c(5, 1);
    std::size_t checked = 0;
    while (true) {
        EXPECT_FALSE(verify_square(c5, raw(c)));
        ++checked;
        std::size_t i = 0;
        while (i < 5 && c[i] == 4)
            c[i++] = 1;
        if (i == 5)
            break;
        ++c[i];
    }
    EXPECT_EQ(checked, 1024u);
    auto c6 = named(Family::cycle, 6);
    EXPECT_TRUE(verify_square(c6, raw({1, 2, 3, 1, 2, 3})));
    EXPECT_FALSE(verify_square(c6, raw({1, 2, 3, 1, 2, kUncoloured})));
}

// Random (G, c) with n <= 10, checked against the naive definitions.
TEST(Properties, DefinitionOracleEquivalence)
{
    SplitMix64 rng(2024);
    int compared = 0;
    for (int sample = 0; sample < 1000; ++sample) {
        const std::size_t n = 2 + uniform_below(rng, 9);
        auto g = oracle::random_connected(n, 0.25 + 0.5 * uniform_open_closed(rng), rng);
        auto adj = oracle::matrix_of(g);
        const Colour k = 1 + static_cast<Colour>(uniform_below(rng, n + 1));
        const bool partial = uniform_below(rng, 5) == 0;
        std::vector<Colour> c(n);
        for (auto& x : c)
            x = (partial && uniform_below(rng, 4) == 0) ? kUncoloured : 1 + static_cast<Colour>(uniform_below(rng, k));
        auto pc = raw(c);
        auto ints = as_ints(pc);
        const auto delta = degree_stats(g).min_degree;
        const std::size_t h = 1 + uniform_below(rng, delta);

        EXPECT_EQ(is_proper(g, pc).proper, oracle::proper(adj, ints));
        for (Vertex v = 0; v < n; ++v)
            EXPECT_EQ(static_cast<int>(unique_colour_count(g, pc, v)), oracle::unique_count(adj, ints, v));
        auto r = verify_h_conflict_free(g, pc, h);
        EXPECT_EQ(r.h_cf_ok, oracle::h_conflict_free(adj, ints, static_cast<int>(h)));
        auto o = verify_odd(g, pc);
        EXPECT_EQ(o.odd_all_ok, oracle::odd(adj, ints));
        for (Vertex v = 0; v < n; ++v)
            EXPECT_EQ(o.odd_ok[v], oracle::odd_vertex(adj, ints, v));
        EXPECT_EQ(verify_square(g, pc), oracle::square(adj, ints));
        if (oracle::total(ints)) {
            EXPECT_EQ(raw_is_proper(g, c), oracle::proper(adj, ints));
            EXPECT_EQ(raw_is_h_conflict_free(g, c, h), oracle::h_conflict_free(adj, ints, static_cast<int>(h)));
            EXPECT_EQ(raw_is_odd(g, c), oracle::odd(adj, ints));
            EXPECT_EQ(raw_is_square(g, c), oracle::square(adj, ints));
        }
        ++compared;
    }
    EXPECT_EQ(compared, 1000);
}

// Samples are biased towards valid colourings by drawing from a small palette
// on sparse graphs and keeping whatever passes.
TEST(Properties, ConflictFreeImpliesOdd)
{
    SplitMix64 rng(7);
    int passing = 0;
    for (int sample = 0; sample < 4000; ++sample) {
        const std::size_t n = 2 + uniform_below(rng, 7);
        auto g = oracle::random_connected(n, 0.4, rng);
        std::vector<Colour> c(n);
        for (auto& x : c)
            x = 1 + static_cast<Colour>(uniform_below(rng, n));
        auto pc = raw(c);
        if (verify_h_conflict_free(g, pc, 1).h_cf_ok) {
            ++passing;
            EXPECT_TRUE(verify_odd(g, pc).odd_all_ok);
        }
    }
    EXPECT_GT(passing, 100);
}

TEST(Properties, SquareImpliesConflictFreeUpToMinDegree)
{
    SplitMix64 rng(8);
    int passing = 0;
    for (int sample = 0; sample < 4000; ++sample) {
        const std::size_t n = 2 + uniform_below(rng, 7);
        auto g = oracle::random_connected(n, 0.3, rng);
        std::vector<Colour> c(n);
        for (auto& x : c)
            x = 1 + static_cast<Colour>(uniform_below(rng, n));
        auto pc = raw(c);
        if (verify_square(g, pc)) {
            ++passing;
            const auto delta = degree_stats(g).min_degree;
            for (std::size_t h = 1; h <= delta; ++h)
                EXPECT_TRUE(verify_h_conflict_free(g, pc, h).h_cf_ok);
        }
    }
    EXPECT_GT(passing, 50);
}

TEST(Properties, UniqueCountInvariantUnderRenaming)
{
    SplitMix64 rng(9);
    for (int sample = 0; sample < 500; ++sample) {
        const std::size_t n = 2 + uniform_below(rng, 9);
        auto g = oracle::random_connected(n, 0.5, rng);
        std::vector<Colour> c(n);
        for (auto& x : c)
            x = uniform_below(rng, 5) == 0 ? kUncoloured : 1 + static_cast<Colour>(uniform_below(rng, n));
        // Injective renaming: a shuffled permutation of [1, n] shifted far away.
        std::vector<Colour> perm(n);
        std::iota(perm.begin(), perm.end(), Colour{1});
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<Colour> renamed(n);
        for (std::size_t i = 0; i < n; ++i)
            renamed[i] = c[i] == kUncoloured ? kUncoloured : 1000 + perm[c[i] - 1] * 7;
        for (Vertex v = 0; v < n; ++v)
            EXPECT_EQ(unique_colour_count(g, raw(c), v), unique_colour_count(g, raw(renamed), v));
    }
}

TEST(ColouringIo, RoundTripAndMissingVertices)
{
    auto c = raw({3, kUncoloured, 1, 7});
    std::stringstream io;
    write_colouring(io, c);
    EXPECT_EQ(read_colouring(io, 4), c);

    std::istringstream in("# partial\n0 2\n2 1\n");
    auto read = read_colouring(in, 4);
    EXPECT_EQ(read.coloured_count(), 2u);
    EXPECT_FALSE(read.is_coloured(1));

    std::istringstream zero("0 0\n");
    EXPECT_THROW(read_colouring(zero, 2), Error);
    std::istringstream range("5 1\n");
    EXPECT_THROW(read_colouring(range, 2), Error);
}
