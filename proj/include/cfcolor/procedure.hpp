#pragma once

#include "cfcolor/colouring.hpp"
#include "cfcolor/graph.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace cfcolor {

enum class Mode {
    // Success iff every vertex satisfies both proof events (enough good
    // rounds, at most half its neighbours coloured).
    faithful,
    // Success iff every vertex already has h unique colours in the partial
    // colouring. Same random process, weaker acceptance test.
    practical,
};

std::string_view to_string(Mode mode);
std::optional<Mode> parse_mode(std::string_view name);

inline constexpr std::size_t kDefaultMaxRestarts = 50;

struct ProcedureParams {
    std::size_t max_degree = 0;
    std::size_t min_degree = 0;
    std::size_t h = 1;
    // max{h, 20 ln(max_degree)}; kept real-valued.
    double h_prime = 0.0;
    // ceil(30 * (max_degree / min_degree) * h_prime)
    std::size_t rounds = 0;
    // Per-vertex selection probability, 1 / max_degree.
    double p_select = 0.0;
    Mode mode = Mode::practical;
    // Extra attempts after the first one.
    std::size_t max_restarts = kDefaultMaxRestarts;
    std::uint64_t seed = 0;
    // min_degree >= 1500 ln(max_degree) and h <= min_degree / 75. Recorded
    // only; the procedure runs regardless.
    bool theorem_preconditions_met = false;
};

// Requires max_degree >= 2, 1 <= min_degree <= max_degree, 1 <= h <= min_degree.
ProcedureParams compute_params(std::size_t max_degree, std::size_t min_degree, std::size_t h, Mode mode,
                               std::uint64_t seed, std::size_t max_restarts = kDefaultMaxRestarts);

ProcedureParams params_for(const Graph& g, std::size_t h, Mode mode, std::uint64_t seed,
                           std::size_t max_restarts = kDefaultMaxRestarts);

// Implicit pendant vertices. Round i runs on G_i, which is G plus i-1
// batches of ceil(d(v)/2) pendants hanging off every vertex v; batches are
// appended to the end of the vertex ordering in vertex order. Pendants are
// never materialised: per owner we keep the ascending list of still
// uncoloured slot ids.
class PendantLedger {
public:
    // Track every vertex.
    explicit PendantLedger(const Graph& g);
    // Track only the given vertices; nothing is stored for the rest.
    PendantLedger(const Graph& g, std::vector<Vertex> tracked);

    static PendantLedger disabled(const Graph& g) { return PendantLedger(g, std::vector<Vertex>{}); }

    // Number of batches attached so far; G_i carries i-1 of them.
    std::size_t batches() const noexcept { return batches_; }
    // Attach batches until the ledger describes G_round.
    void extend_to(std::size_t round);

    bool tracks(Vertex v) const { return ordinal_.at(v) >= 0; }
    std::size_t tracked_count() const noexcept { return tracked_.size(); }
    std::span<const Vertex> tracked() const noexcept { return tracked_; }
    // Position of v among the tracked vertices; v must be tracked.
    std::size_t ordinal(Vertex v) const;

    std::size_t batch_size(Vertex v) const { return batch_size_.at(v); }
    std::uint64_t slot_count(Vertex v) const { return batches_ * batch_size_.at(v); }
    std::uint64_t coloured_count(Vertex v) const;
    std::span<const std::uint64_t> uncoloured_slots(Vertex v) const;
    bool is_coloured(Vertex v, std::uint64_t slot) const;

    // Index of pendant `slot` of v in the extended ordering of V_i (real
    // vertices occupy 0..n-1).
    std::uint64_t global_position(Vertex v, std::uint64_t slot) const;

    // Colour the uncoloured pendants of v sitting at the given (ascending)
    // ranks of uncoloured_slots(v).
    void colour_ranks(Vertex v, std::span<const std::uint32_t> ranks);

private:
    std::size_t n_ = 0;
    std::size_t batches_ = 0;
    std::vector<std::uint64_t> batch_size_;
    std::vector<std::uint64_t> batch_offset_;
    std::uint64_t batch_total_ = 0;
    std::vector<std::int64_t> ordinal_;
    std::vector<Vertex> tracked_;
    std::vector<std::vector<std::uint64_t>> uncoloured_;
    std::vector<std::uint64_t> coloured_;
};

// Source of the round's random choices. Real selections and pendant
// selections are separate so real outcomes never depend on pendant
// bookkeeping.
class SelectionSource {
public:
    virtual ~SelectionSource() = default;
    // Ascending chosen real vertices among 0..n-1.
    virtual std::vector<Vertex> select_real(std::size_t n) = 0;
    // Ascending ranks among the `uncoloured` still-uncoloured pendants of
    // owner that are chosen this round.
    virtual std::vector<std::uint32_t> select_pendants(Vertex owner, std::size_t uncoloured) = 0;
};

// Independent Bernoulli(p) choices. Stream for the real vertices of round i
// in attempt r: derive_seed(seed, {r, i, 0}); pendants of owner v:
// derive_seed(seed, {r, i, 1, v}).
class SeededSelection final : public SelectionSource {
public:
    SeededSelection(std::uint64_t seed, std::uint64_t attempt, std::uint64_t round, double p);

    std::vector<Vertex> select_real(std::size_t n) override;
    std::vector<std::uint32_t> select_pendants(Vertex owner, std::size_t uncoloured) override;

private:
    std::uint64_t seed_;
    std::uint64_t attempt_;
    std::uint64_t round_;
    double p_;
};

struct RoundTrace {
    std::size_t round = 0;
    // C_i^ch restricted to real vertices, ascending.
    std::vector<Vertex> chosen_real;
    // Chosen real vertices with no chosen real neighbour.
    std::vector<Vertex> isolated;
    // Isolated real vertices that were still uncoloured; they receive colour `round`.
    std::vector<Vertex> newly_coloured;
    // Pendant choices per tracked owner (ledger ordinal t): the ranks
    // pendant_ranks[pendant_offsets[t] .. pendant_offsets[t+1]) among that
    // owner's uncoloured pendants. Choices of already-coloured pendants have
    // no effect and are not sampled.
    std::vector<std::uint32_t> pendant_offsets;
    std::vector<std::uint32_t> pendant_ranks;
    // Cumulative coloured pendants per tracked owner after the round.
    std::vector<std::uint64_t> pendant_coloured;

    std::span<const std::uint32_t> chosen_pendants(std::size_t ordinal) const
    {
        return {pendant_ranks.data() + pendant_offsets[ordinal], pendant_ranks.data() + pendant_offsets[ordinal + 1]};
    }

    bool operator==(const RoundTrace&) const = default;
};

// Steps (a) and (b) plus the choice of newly coloured vertices, without
// mutating anything. `ledger` must already describe G_round.
RoundTrace plan_round(const Graph& g, const PendantLedger& ledger, const PartialColouring& coloured,
                      std::size_t round, SelectionSource& source);

// Step (c): colour trace.newly_coloured with `round`, colour the isolated
// pendants, and record pendant totals in the trace.
void apply_round(RoundTrace& trace, PendantLedger& ledger, PartialColouring& coloured);

// extend_to + plan + apply.
RoundTrace run_round(const Graph& g, PendantLedger& ledger, PartialColouring& coloured, std::size_t round,
                     SelectionSource& source);

// Round event for v: some vertex among the first ceil(d(v)/2) neighbours of
// v in G_i that were uncoloured before the round is coloured in the round,
// and no other neighbour of v in G is chosen. Real neighbours precede
// pendants in the ordering. From round 2 on, v must be tracked by `ledger`.
bool event_round_unique(const Graph& g, const PendantLedger& ledger, const RoundTrace& trace,
                        const PartialColouring& coloured_before, Vertex v);

// Replays the traces from an empty colouring and counts the rounds where
// event_round_unique holds for v.
std::size_t count_unique_rounds(const Graph& g, const PendantLedger& ledger, std::span<const RoundTrace> traces,
                                Vertex v);

// At least h' rounds with the round event.
bool event_enough_unique_rounds(const Graph& g, const PendantLedger& ledger, std::span<const RoundTrace> traces,
                                Vertex v, const ProcedureParams& params);

// At most d(v)/2 neighbours of v coloured over all traces.
bool event_few_neighbours_coloured(const Graph& g, std::span<const RoundTrace> traces, Vertex v);

struct ProcedureOutcome {
    ProcedureParams params;
    // Final total colouring of G.
    PartialColouring colouring;
    // Colouring after the random rounds (colours in [1, m]); empty on fallback.
    PartialColouring partial;
    std::size_t partial_palette_size = 0;
    std::size_t fresh_colours_used = 0;
    std::size_t total_colours = 0;
    // Max degree of the subgraph induced by vertices left uncoloured by the rounds.
    std::size_t residual_max_degree = 0;
    std::size_t restarts = 0;
    bool fallback_used = false;
    // Unique colours seen by each vertex in `partial` (in `colouring` when
    // the fallback ran).
    std::vector<std::size_t> per_vertex_unique;
    // Rounds of the accepted attempt (or the last attempt before fallback).
    std::vector<RoundTrace> trace;
};

struct RunOptions {
    bool record_trace = false;
};

// Throws Error(precondition) on isolated vertices, h > min degree, or params
// that do not match g. The returned colouring always passes
// verify_h_conflict_free(g, ., params.h); Error(internal) otherwise.
ProcedureOutcome run_procedure(const Graph& g, const ProcedureParams& params, const RunOptions& options = {});

// Greedy completion of a partial colouring with colours > palette_top, in
// index order, smallest colour absent from the neighbourhood.
PartialColouring complete_greedily(const Graph& g, const PartialColouring& partial, Colour palette_top);

// Greedy distance-2 colouring from colour 1 in index order.
PartialColouring greedy_square_colouring(const Graph& g);

// For every vertex, the number of colours <= rounds that are unique in its
// neighbourhood is the same in outcome.partial and outcome.colouring.
// Throws Error(precondition) for fallback outcomes.
bool completion_preserves_uniqueness(const Graph& g, const ProcedureOutcome& outcome);

} // namespace cfcolor
