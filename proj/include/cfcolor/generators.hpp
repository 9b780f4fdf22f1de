#pragma once

#include "cfcolor/graph.hpp"

#include <cstdint>
#include <optional>
#include <string_view>

namespace cfcolor {

enum class Family {
    cycle,
    path,
    complete,
    complete_bipartite,
    star,
    random_regular,
    gnp,
    mols_graph,
};

std::string_view to_string(Family family);
std::optional<Family> parse_family(std::string_view name);

// Which fields matter depends on the family:
//   cycle, path, complete: n
//   star: n (centre 0 plus n-1 leaves)
//   complete_bipartite: a, b
//   random_regular: n, d, seed, max_retries
//   gnp: n, p, seed
//   mols_graph: q (prime order), k (number of orthogonal squares, 1..q-1)
struct GeneratorSpec {
    Family family = Family::cycle;
    std::size_t n = 0;
    std::size_t d = 0;
    std::size_t a = 0;
    std::size_t b = 0;
    std::size_t q = 0;
    std::size_t k = 0;
    double p = 0.0;
    std::uint64_t seed = 0;
    std::size_t max_retries = 1000;
};

// Deterministic for a fixed spec. Throws Error on infeasible parameters and
// when random_regular exhausts its retry budget.
Graph generate(const GeneratorSpec& spec);

} // namespace cfcolor
