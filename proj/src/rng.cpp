#include "cfcolor/rng.hpp"

#include <cmath>

namespace cfcolor {

std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

SplitMix64::result_type SplitMix64::operator()()
{
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path)
{
    std::uint64_t key = mix64(master);
    for (std::uint64_t component : path)
        key = mix64(key ^ mix64(component + 0x632be59bd9b4e019ULL));
    return key;
}

double uniform_open_closed(SplitMix64& rng)
{
    // 53 random bits, shifted so 0 is excluded and 1 is included.
    return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
}

std::uint64_t uniform_below(SplitMix64& rng, std::uint64_t bound)
{
    // Lemire's multiply-shift with rejection.
    std::uint64_t x = rng();
    __uint128_t product = static_cast<__uint128_t>(x) * bound;
    auto low = static_cast<std::uint64_t>(product);
    if (low < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            x = rng();
            product = static_cast<__uint128_t>(x) * bound;
            low = static_cast<std::uint64_t>(product);
        }
    }
    return static_cast<std::uint64_t>(product >> 64);
}

std::uint64_t geometric_gap(SplitMix64& rng, double p)
{
    const double u = uniform_open_closed(rng);
    const double gap = std::floor(std::log(u) / std::log1p(-p));
    if (!(gap < 9.0e18))
        return std::numeric_limits<std::uint64_t>::max();
    return static_cast<std::uint64_t>(gap);
}

} // namespace cfcolor
