#pragma once

#include "cfcolor/exact.hpp"
#include "cfcolor/graph.hpp"
#include "cfcolor/procedure.hpp"
#include "cfcolor/records.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace cfcolor {

// Runs body(0..count-1) on up to `threads` workers (0 = hardware
// concurrency). Results must be written to per-index slots by the caller,
// which keeps merged output independent of scheduling.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& body);

// Seed of trial t under a master seed.
std::uint64_t trial_seed(std::uint64_t master, std::size_t trial);

// ---- colour ----------------------------------------------------------------

struct ColourTask {
    std::size_t h = 1;
    Mode mode = Mode::practical;
    std::size_t trials = 1;
    std::uint64_t seed = 0;
    std::size_t max_restarts = kDefaultMaxRestarts;
    std::size_t threads = 0;
};

struct ColourRun {
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    ProcedureOutcome outcome;
    // Recomputed after the run; min/mean of unique neighbour colours in the
    // final colouring.
    bool verified = false;
    std::size_t min_unique = 0;
    double mean_unique = 0.0;
};

// One run per trial, each re-verified before it is returned. A colouring
// that fails verification aborts with Error(internal).
std::vector<ColourRun> cmd_colour(const Graph& g, const ColourTask& task);

Row colour_record(const Graph& g, const ColourRun& run);

// ---- estimate-events ---------------------------------------------------------

struct EstimateTask {
    // Vertex whose events are estimated; sampled from the seed when absent.
    std::optional<Vertex> target;
    std::size_t h = 1;
    // Full m-round samples (mean of Y, Pr(not A_v), Pr(not B_v)).
    std::size_t trials = 10'000;
    // Round-1 samples (Pr(A_v^1)).
    std::size_t round_trials = 100'000;
    std::uint64_t seed = 0;
    // Debug override of the selection probability.
    std::optional<double> p_select;
    std::size_t threads = 0;
};

struct Estimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t samples = 0;
};

Estimate estimate_from(std::span<const double> samples);

struct EventStatistics {
    Vertex target = 0;
    std::size_t degree = 0;
    ProcedureParams params;
    Estimate round_one_unique;    // Pr(A_v^1)
    Estimate not_enough_rounds;   // Pr(not A_v)
    Estimate too_many_coloured;   // Pr(not B_v)
    Estimate neighbour_choices;   // Y = sum_i |C_i^ch ∩ N(v)|
    // ceil(d/2) p (1-p)^(d+Delta-1), the single-row probability of the
    // coupling matrix.
    double round_one_bound = 0.0;
    // d / (15 Delta); only valid for large Delta, reported not checked.
    double round_one_simplified = 0.0;
    // m d p, the exact mean of Y.
    double expected_choices = 0.0;
    // 0.42 d, only when params.theorem_preconditions_met.
    std::optional<double> choices_cap;
    // Delta^-5, the per-event failure bound.
    double failure_bound = 0.0;
    bool low_trials_warning = false;
};

EventStatistics cmd_estimate_events(const Graph& g, const EstimateTask& task);

Row estimate_record(const EventStatistics& stats);

// Pr(A_v^1) lower bound ceil(d/2) p (1-p)^(d+Delta-1).
double round_one_lower_bound(std::size_t degree, std::size_t max_degree, double p);

// ---- bound-report ----------------------------------------------------------

struct BoundInput {
    std::string source = "procedure";   // "procedure" or "exact"
    std::string target = "pcf";         // "pcf", "odd", "square", "proper"
    std::size_t n = 0;
    std::size_t max_degree = 0;
    std::size_t min_degree = 0;
    std::size_t h = 1;
    std::size_t total_colours = 0;
    bool fallback_used = false;
    bool connected = true;
    bool regular = false;
};

BoundInput bound_input(const Graph& g, const ColourRun& run);
BoundInput bound_input(const Graph& g, const Target& target, const ChromaticResult& result);

enum class Regime {
    // Non-asymptotic statement with its hypotheses met: a miss is a violation.
    asserted,
    // Hypotheses (or the large-degree regime) not met: shown for context only.
    informational,
    not_applicable,
};

std::string_view to_string(Regime regime);

struct ThresholdCheck {
    std::string name;
    double threshold = 0.0;
    bool strict = true;
    bool satisfied = false;
    Regime regime = Regime::not_applicable;
};

struct BoundRow {
    BoundInput input;
    bool preconditions_met = false;
    std::vector<ThresholdCheck> checks;
    // Local lemma side data: p = Delta^-5, D = 2 Delta^4, e p (D+1).
    double lll_p = 0.0;
    double lll_dependency = 0.0;
    double lll_product = 0.0;
    bool lll_condition = false;
};

struct ThresholdSummary {
    std::string name;
    std::size_t evaluated = 0;
    std::size_t satisfied = 0;
    std::size_t asserted = 0;
    std::size_t asserted_violations = 0;
};

struct BoundReport {
    std::vector<BoundRow> rows;
    std::vector<ThresholdSummary> summary;
    // Rows excluded from the summary because the fallback produced them.
    std::size_t fallback_rows = 0;
};

// Names of the threshold columns, in report order.
std::vector<std::string> threshold_names();

BoundRow bound_row(const BoundInput& input);
BoundReport cmd_bound_report(std::span<const BoundInput> inputs);

Row bound_record(const BoundRow& row);
nlohmann::ordered_json to_json(const BoundReport& report);

// ---- feasibility sweep -------------------------------------------------------

struct SweepTask {
    std::vector<std::size_t> degrees{16, 32, 64};
    // Each regular graph has vertices_per_degree * Delta vertices.
    std::size_t vertices_per_degree = 4;
    std::size_t trials = 5;
    std::size_t h = 1;
    std::uint64_t seed = 0;
    std::size_t threads = 0;
};

struct SweepRow {
    std::size_t max_degree = 0;
    std::size_t n = 0;
    std::size_t trials = 0;
    std::size_t valid_runs = 0;
    std::size_t fallback_runs = 0;
    double mean_total_colours = 0.0;
    std::size_t min_total_colours = 0;
    std::size_t max_total_colours = 0;
    // total_colours / Delta, averaged over runs.
    double mean_ratio = 0.0;
    std::size_t rounds = 0;
};

std::vector<SweepRow> feasibility_sweep(const SweepTask& task);

Row sweep_record(const SweepRow& row);

} // namespace cfcolor
