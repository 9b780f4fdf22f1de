#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>

namespace cfcolor {

// SplitMix64. Used both as the stream engine and as the mixing function for
// key derivation, so a stream is a pure function of (master seed, key path).
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()();

private:
    std::uint64_t state_;
};

std::uint64_t mix64(std::uint64_t x);

// Counter-based derivation: fold each key component into the master seed
// through mix64. derive_seed(s, {a, b}) != derive_seed(s, {b, a}).
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path);

// Uniform double in (0, 1].
double uniform_open_closed(SplitMix64& rng);

// Uniform integer in [0, bound). bound must be positive.
std::uint64_t uniform_below(SplitMix64& rng, std::uint64_t bound);

// Number of failures before the next success of a Bernoulli(p) sequence,
// 0 < p < 1. Used to skip over unselected items.
std::uint64_t geometric_gap(SplitMix64& rng, double p);

} // namespace cfcolor
