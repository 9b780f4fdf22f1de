#pragma once

#include "cfcolor/colouring.hpp"
#include "cfcolor/graph.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace cfcolor {

enum class TargetKind { proper, pcf, odd, square };

// `h` only matters for pcf. `proper` is plain chromatic number; it is needed
// for the bottom of the chi <= chi_odd <= chi_pcf chain.
struct Target {
    TargetKind kind = TargetKind::pcf;
    std::size_t h = 1;

    static Target proper() { return {TargetKind::proper, 0}; }
    static Target pcf(std::size_t h) { return {TargetKind::pcf, h}; }
    static Target odd() { return {TargetKind::odd, 0}; }
    static Target square() { return {TargetKind::square, 0}; }

    bool operator==(const Target&) const = default;
};

std::string to_string(const Target& target);
std::optional<TargetKind> parse_target_kind(std::string_view name);

struct SolveOptions {
    std::optional<double> time_budget_secs;
};

enum class SolveStatus { found, none, unknown };
std::string_view to_string(SolveStatus status);

struct SolveResult {
    SolveStatus status = SolveStatus::unknown;
    // Total colouring with colours in [1, k]; present iff status == found.
    std::optional<PartialColouring> colouring;
    std::uint64_t nodes_explored = 0;
};

// Exhaustive (symmetry-reduced) backtracking search for a colouring of the
// requested kind using colours from [k]. Runs out of budget -> unknown.
// Throws Error(precondition) on isolated vertices for pcf/odd, and when
// h is outside [1, min degree] for pcf.
SolveResult find_colouring(const Graph& g, const Target& target, std::size_t k, const SolveOptions& options = {});

enum class ValueStatus { exact, exceeds, unknown };
std::string_view to_string(ValueStatus status);

struct ChromaticResult {
    ValueStatus status = ValueStatus::unknown;
    // exact: value == lower == upper. exceeds: lower == k_max + 1.
    // unknown: the answer lies in [lower, upper] (upper == 0 if no colouring
    // was found at all).
    std::size_t value = 0;
    std::size_t lower = 1;
    std::size_t upper = 0;
    std::optional<PartialColouring> witness;
    std::uint64_t nodes_explored = 0;
};

// Least k in [1, k_max] admitting a colouring of the requested kind; the
// value is certified by a failed search at k-1 and a witness at k.
ChromaticResult chromatic_value(const Graph& g, const Target& target, std::size_t k_max,
                                const SolveOptions& options = {});

// Test oracle: tries all k^n assignments against the colouring-core
// predicates. Throws Error(precondition) when k^n exceeds 10^8.
bool enumeration_oracle(const Graph& g, const Target& target, std::size_t k);

} // namespace cfcolor
