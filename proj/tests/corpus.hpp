#pragma once

// Small-graph corpus shared by the exact-solver tests and the acceptance
// binary: named families with n <= 7 plus seeded random connected graphs.

#include "cfcolor/generators.hpp"
#include "cfcolor/graph.hpp"

#include "oracles.hpp"

#include <string>
#include <vector>

namespace corpus {

struct Instance {
    std::string name;
    cfcolor::Graph graph;
};

inline std::vector<Instance> named_families(std::size_t max_n = 7)
{
    using cfcolor::Family;
    using cfcolor::GeneratorSpec;
    std::vector<Instance> out;
    auto add = [&](std::string name, GeneratorSpec spec) { out.push_back({std::move(name), cfcolor::generate(spec)}); };
    for (std::size_t n = 2; n <= max_n; ++n) {
        GeneratorSpec spec;
        spec.n = n;
        spec.family = Family::path;
        add("P" + std::to_string(n), spec);
        spec.family = Family::complete;
        add("K" + std::to_string(n), spec);
        if (n >= 3) {
            spec.family = Family::cycle;
            add("C" + std::to_string(n), spec);
            spec.family = Family::star;
            add("S" + std::to_string(n), spec);
        }
    }
    for (std::size_t a = 2; a <= max_n; ++a)
        for (std::size_t b = a; a + b <= max_n; ++b) {
            GeneratorSpec spec;
            spec.family = Family::complete_bipartite;
            spec.a = a;
            spec.b = b;
            add("K" + std::to_string(a) + "," + std::to_string(b), spec);
        }
    return out;
}

// n uniform in [3, max_n], edge probability uniform in [0.3, 0.8].
inline std::vector<Instance> random_connected(std::size_t count, std::uint64_t seed, std::size_t max_n = 7)
{
    cfcolor::SplitMix64 rng(seed);
    std::vector<Instance> out;
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t n = 3 + cfcolor::uniform_below(rng, max_n - 2);
        const double p = 0.3 + 0.5 * cfcolor::uniform_open_closed(rng);
        out.push_back({"random" + std::to_string(i), oracle::random_connected(n, p, rng)});
    }
    return out;
}

inline std::vector<Instance> full(std::size_t random_count, std::uint64_t seed)
{
    auto out = named_families();
    for (auto& inst : random_connected(random_count, seed))
        out.push_back(std::move(inst));
    return out;
}

} // namespace corpus
