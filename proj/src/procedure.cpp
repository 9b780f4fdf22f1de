#include "cfcolor/procedure.hpp"

#include "cfcolor/error.hpp"
#include "cfcolor/rng.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cfcolor {

std::string_view to_string(Mode mode)
{
    return mode == Mode::faithful ? "faithful" : "practical";
}

std::optional<Mode> parse_mode(std::string_view name)
{
    if (name == "faithful")
        return Mode::faithful;
    if (name == "practical")
        return Mode::practical;
    return std::nullopt;
}

ProcedureParams compute_params(std::size_t max_degree, std::size_t min_degree, std::size_t h, Mode mode,
                               std::uint64_t seed, std::size_t max_restarts)
{
    if (max_degree < 2)
        throw Error(ErrorKind::precondition, "procedure needs max degree >= 2");
    if (min_degree < 1 || min_degree > max_degree)
        throw Error(ErrorKind::precondition, "procedure needs 1 <= min degree <= max degree");
    if (h < 1)
        throw Error(ErrorKind::precondition, "h must be at least 1");
    if (h > min_degree)
        throw Error(ErrorKind::precondition, "h=" + std::to_string(h) + " exceeds min degree " +
                                                 std::to_string(min_degree) +
                                                 "; a vertex of min degree cannot see h unique colours");

    const double ln_delta = std::log(static_cast<double>(max_degree));
    ProcedureParams params;
    params.max_degree = max_degree;
    params.min_degree = min_degree;
    params.h = h;
    params.h_prime = std::max(static_cast<double>(h), 20.0 * ln_delta);
    params.rounds = static_cast<std::size_t>(
        std::ceil(30.0 * static_cast<double>(max_degree) * params.h_prime / static_cast<double>(min_degree)));
    params.p_select = 1.0 / static_cast<double>(max_degree);
    params.mode = mode;
    params.max_restarts = max_restarts;
    params.seed = seed;
    params.theorem_preconditions_met = static_cast<double>(min_degree) >= 1500.0 * ln_delta &&
                                       static_cast<double>(h) <= static_cast<double>(min_degree) / 75.0;
    return params;
}

ProcedureParams params_for(const Graph& g, std::size_t h, Mode mode, std::uint64_t seed, std::size_t max_restarts)
{
    const auto stats = degree_stats(g);
    if (stats.isolated)
        throw Error(ErrorKind::precondition, "graph has an isolated vertex");
    return compute_params(stats.max_degree, stats.min_degree, h, mode, seed, max_restarts);
}

// --- PendantLedger ---------------------------------------------------------

PendantLedger::PendantLedger(const Graph& g)
    : PendantLedger(g, [&] {
          std::vector<Vertex> all(g.vertex_count());
          for (Vertex v = 0; v < all.size(); ++v)
              all[v] = v;
          return all;
      }())
{
}

PendantLedger::PendantLedger(const Graph& g, std::vector<Vertex> tracked)
    : n_(g.vertex_count()), batch_size_(n_), batch_offset_(n_), ordinal_(n_, -1), tracked_(std::move(tracked))
{
    for (Vertex v = 0; v < n_; ++v) {
        batch_size_[v] = (g.degree(v) + 1) / 2;
        batch_offset_[v] = batch_total_;
        batch_total_ += batch_size_[v];
    }
    std::sort(tracked_.begin(), tracked_.end());
    tracked_.erase(std::unique(tracked_.begin(), tracked_.end()), tracked_.end());
    for (std::size_t t = 0; t < tracked_.size(); ++t)
        ordinal_.at(tracked_[t]) = static_cast<std::int64_t>(t);
    uncoloured_.resize(tracked_.size());
    coloured_.assign(tracked_.size(), 0);
}

void PendantLedger::extend_to(std::size_t round)
{
    while (batches_ + 1 < round) {
        for (std::size_t t = 0; t < tracked_.size(); ++t) {
            const std::uint64_t size = batch_size_[tracked_[t]];
            const std::uint64_t first = batches_ * size;
            for (std::uint64_t s = 0; s < size; ++s)
                uncoloured_[t].push_back(first + s);
        }
        ++batches_;
    }
}

std::size_t PendantLedger::ordinal(Vertex v) const
{
    const auto t = ordinal_.at(v);
    if (t < 0)
        throw Error(ErrorKind::precondition, "pendants of vertex " + std::to_string(v) + " are not tracked");
    return static_cast<std::size_t>(t);
}

std::uint64_t PendantLedger::coloured_count(Vertex v) const
{
    return coloured_[ordinal(v)];
}

std::span<const std::uint64_t> PendantLedger::uncoloured_slots(Vertex v) const
{
    return uncoloured_[ordinal(v)];
}

bool PendantLedger::is_coloured(Vertex v, std::uint64_t slot) const
{
    if (slot >= slot_count(v))
        throw Error(ErrorKind::out_of_range, "pendant slot out of range");
    const auto& list = uncoloured_[ordinal(v)];
    return !std::binary_search(list.begin(), list.end(), slot);
}

std::uint64_t PendantLedger::global_position(Vertex v, std::uint64_t slot) const
{
    const std::uint64_t size = batch_size_.at(v);
    if (slot >= batches_ * size)
        throw Error(ErrorKind::out_of_range, "pendant slot out of range");
    const std::uint64_t batch = slot / size;
    return n_ + batch * batch_total_ + batch_offset_[v] + slot % size;
}

void PendantLedger::colour_ranks(Vertex v, std::span<const std::uint32_t> ranks)
{
    if (ranks.empty())
        return;
    auto& list = uncoloured_[ordinal(v)];
    std::size_t write = ranks.front();
    std::size_t next = 0;
    for (std::size_t read = ranks.front(); read < list.size(); ++read) {
        if (next < ranks.size() && ranks[next] == read) {
            ++next;
            continue;
        }
        list[write++] = list[read];
    }
    if (next != ranks.size())
        throw Error(ErrorKind::internal, "pendant rank out of range");
    list.resize(write);
    coloured_[ordinal(v)] += ranks.size();
}

// --- selection -------------------------------------------------------------

namespace {

template <typename Index>
std::vector<Index> bernoulli_indices(std::uint64_t stream, std::size_t count, double p)
{
    std::vector<Index> out;
    if (count == 0 || !(p > 0.0))
        return out;
    if (p >= 1.0) {
        out.resize(count);
        for (std::size_t i = 0; i < count; ++i)
            out[i] = static_cast<Index>(i);
        return out;
    }
    SplitMix64 rng(stream);
    std::uint64_t i = geometric_gap(rng, p);
    while (i < count) {
        out.push_back(static_cast<Index>(i));
        const std::uint64_t gap = geometric_gap(rng, p);
        if (gap >= count)
            break;
        i += gap + 1;
    }
    return out;
}

} // namespace

SeededSelection::SeededSelection(std::uint64_t seed, std::uint64_t attempt, std::uint64_t round, double p)
    : seed_(seed), attempt_(attempt), round_(round), p_(p)
{
}

std::vector<Vertex> SeededSelection::select_real(std::size_t n)
{
    return bernoulli_indices<Vertex>(derive_seed(seed_, {attempt_, round_, 0}), n, p_);
}

std::vector<std::uint32_t> SeededSelection::select_pendants(Vertex owner, std::size_t uncoloured)
{
    return bernoulli_indices<std::uint32_t>(derive_seed(seed_, {attempt_, round_, 1, owner}), uncoloured, p_);
}

// --- rounds ----------------------------------------------------------------

namespace {

bool contains(std::span<const Vertex> sorted, Vertex v)
{
    return std::binary_search(sorted.begin(), sorted.end(), v);
}

} // namespace

RoundTrace plan_round(const Graph& g, const PendantLedger& ledger, const PartialColouring& coloured,
                      std::size_t round, SelectionSource& source)
{
    if (round < 1)
        throw Error(ErrorKind::precondition, "rounds are numbered from 1");
    if (ledger.batches() + 1 != round)
        throw Error(ErrorKind::precondition, "pendant ledger does not describe G_" + std::to_string(round));

    RoundTrace trace;
    trace.round = round;
    trace.chosen_real = source.select_real(g.vertex_count());
    for (Vertex u : trace.chosen_real) {
        bool isolated = true;
        for (Vertex w : g.neighbours(u))
            if (contains(trace.chosen_real, w)) {
                isolated = false;
                break;
            }
        if (isolated) {
            trace.isolated.push_back(u);
            if (!coloured.is_coloured(u))
                trace.newly_coloured.push_back(u);
        }
    }

    trace.pendant_offsets.reserve(ledger.tracked_count() + 1);
    trace.pendant_offsets.push_back(0);
    for (Vertex owner : ledger.tracked()) {
        const auto available = ledger.uncoloured_slots(owner).size();
        auto ranks = source.select_pendants(owner, available);
        trace.pendant_ranks.insert(trace.pendant_ranks.end(), ranks.begin(), ranks.end());
        trace.pendant_offsets.push_back(static_cast<std::uint32_t>(trace.pendant_ranks.size()));
    }
    return trace;
}

void apply_round(RoundTrace& trace, PendantLedger& ledger, PartialColouring& coloured)
{
    const auto colour = static_cast<Colour>(trace.round);
    for (Vertex u : trace.newly_coloured)
        coloured.assign(u, colour);
    trace.pendant_coloured.assign(ledger.tracked_count(), 0);
    for (std::size_t t = 0; t < ledger.tracked_count(); ++t) {
        const Vertex owner = ledger.tracked()[t];
        // A chosen pendant is isolated unless its owner was chosen too.
        if (!contains(trace.chosen_real, owner))
            ledger.colour_ranks(owner, trace.chosen_pendants(t));
        trace.pendant_coloured[t] = ledger.coloured_count(owner);
    }
}

RoundTrace run_round(const Graph& g, PendantLedger& ledger, PartialColouring& coloured, std::size_t round,
                     SelectionSource& source)
{
    ledger.extend_to(round);
    auto trace = plan_round(g, ledger, coloured, round, source);
    apply_round(trace, ledger, coloured);
    return trace;
}

// --- events ----------------------------------------------------------------

bool event_round_unique(const Graph& g, const PendantLedger& ledger, const RoundTrace& trace,
                        const PartialColouring& coloured_before, Vertex v)
{
    const auto nb = g.neighbours(v);
    const std::size_t window = (nb.size() + 1) / 2;

    std::size_t chosen_neighbours = 0;
    Vertex chosen = 0;
    for (Vertex u : trace.chosen_real)
        if (std::binary_search(nb.begin(), nb.end(), u)) {
            chosen = u;
            if (++chosen_neighbours > 1)
                return false;
        }

    if (chosen_neighbours == 1) {
        // Only this real neighbour can be the witness; it must sit inside the
        // window of uncoloured neighbours and be coloured now.
        if (coloured_before.is_coloured(chosen) || !contains(trace.isolated, chosen))
            return false;
        std::size_t rank = 0;
        for (Vertex w : nb) {
            if (w == chosen)
                break;
            rank += !coloured_before.is_coloured(w);
        }
        return rank < window;
    }

    // No real neighbour chosen: the witness has to be a pendant.
    if (trace.round <= 1)
        return false;
    std::size_t uncoloured_real = 0;
    for (Vertex w : nb)
        uncoloured_real += !coloured_before.is_coloured(w);
    if (uncoloured_real >= window)
        return false;
    const std::size_t pendant_window = window - uncoloured_real;
    if (contains(trace.chosen_real, v))
        return false;
    const auto ranks = trace.chosen_pendants(ledger.ordinal(v));
    return !ranks.empty() && ranks.front() < pendant_window;
}

std::size_t count_unique_rounds(const Graph& g, const PendantLedger& ledger, std::span<const RoundTrace> traces,
                                Vertex v)
{
    PartialColouring coloured(g.vertex_count());
    std::size_t count = 0;
    for (const auto& trace : traces) {
        count += event_round_unique(g, ledger, trace, coloured, v);
        for (Vertex u : trace.newly_coloured)
            coloured.assign(u, static_cast<Colour>(trace.round));
    }
    return count;
}

bool event_enough_unique_rounds(const Graph& g, const PendantLedger& ledger, std::span<const RoundTrace> traces,
                                Vertex v, const ProcedureParams& params)
{
    return static_cast<double>(count_unique_rounds(g, ledger, traces, v)) >= params.h_prime;
}

bool event_few_neighbours_coloured(const Graph& g, std::span<const RoundTrace> traces, Vertex v)
{
    const auto nb = g.neighbours(v);
    std::size_t coloured = 0;
    for (const auto& trace : traces)
        for (Vertex u : trace.newly_coloured)
            coloured += std::binary_search(nb.begin(), nb.end(), u);
    return 2 * coloured <= nb.size();
}

// --- completion ------------------------------------------------------------

PartialColouring complete_greedily(const Graph& g, const PartialColouring& partial, Colour palette_top)
{
    PartialColouring out = partial;
    std::vector<Colour> seen;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (out.is_coloured(v))
            continue;
        seen.clear();
        for (Vertex w : g.neighbours(v))
            if (out.raw()[w] > palette_top)
                seen.push_back(out.raw()[w]);
        std::sort(seen.begin(), seen.end());
        Colour c = palette_top + 1;
        for (Colour s : seen) {
            if (s == c)
                ++c;
            else if (s > c)
                break;
        }
        out.assign(v, c);
    }
    return out;
}

PartialColouring greedy_square_colouring(const Graph& g)
{
    PartialColouring out(g.vertex_count());
    std::vector<Colour> seen;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        seen.clear();
        for (Vertex w : g.neighbours(v)) {
            if (out.is_coloured(w))
                seen.push_back(out.raw()[w]);
            for (Vertex x : g.neighbours(w))
                if (x != v && out.is_coloured(x))
                    seen.push_back(out.raw()[x]);
        }
        std::sort(seen.begin(), seen.end());
        Colour c = 1;
        for (Colour s : seen) {
            if (s == c)
                ++c;
            else if (s > c)
                break;
        }
        out.assign(v, c);
    }
    return out;
}

namespace {

// Unique colours <= top in the neighbourhood of v.
std::size_t unique_up_to(const Graph& g, std::span<const Colour> c, Vertex v, Colour top, std::vector<Colour>& scratch)
{
    scratch.clear();
    for (Vertex w : g.neighbours(v))
        if (c[w] != kUncoloured && c[w] <= top)
            scratch.push_back(c[w]);
    std::sort(scratch.begin(), scratch.end());
    std::size_t unique = 0;
    for (std::size_t i = 0; i < scratch.size();) {
        std::size_t j = i;
        while (j < scratch.size() && scratch[j] == scratch[i])
            ++j;
        unique += (j - i == 1);
        i = j;
    }
    return unique;
}

struct Attempt {
    bool success = false;
    PartialColouring partial;
    std::vector<RoundTrace> trace;
};

Attempt run_attempt(const Graph& g, const ProcedureParams& params, std::size_t attempt, bool record_trace)
{
    const std::size_t n = g.vertex_count();
    const bool faithful = params.mode == Mode::faithful;
    Attempt out;
    out.partial = PartialColouring(n);
    PendantLedger ledger = faithful ? PendantLedger(g) : PendantLedger::disabled(g);
    std::vector<std::size_t> good_rounds(n, 0);
    std::vector<std::size_t> coloured_neighbours(n, 0);

    bool doomed = false;
    for (std::size_t round = 1; round <= params.rounds && !doomed; ++round) {
        ledger.extend_to(round);
        SeededSelection source(params.seed, attempt, round, params.p_select);
        auto trace = plan_round(g, ledger, out.partial, round, source);
        if (faithful)
            for (Vertex v = 0; v < n; ++v)
                good_rounds[v] += event_round_unique(g, ledger, trace, out.partial, v);
        apply_round(trace, ledger, out.partial);

        if (faithful) {
            // Both events are monotone: once a vertex has more than half of
            // its neighbours coloured, or cannot reach h' good rounds in the
            // rounds left, the attempt has failed.
            for (Vertex u : trace.newly_coloured)
                for (Vertex w : g.neighbours(u))
                    if (2 * ++coloured_neighbours[w] > g.degree(w))
                        doomed = true;
            const double remaining = static_cast<double>(params.rounds - round);
            for (Vertex v = 0; v < n && !doomed; ++v)
                if (static_cast<double>(good_rounds[v]) + remaining < params.h_prime)
                    doomed = true;
        }
        if (record_trace)
            out.trace.push_back(std::move(trace));
    }

    if (faithful) {
        out.success = !doomed;
        for (Vertex v = 0; v < n && out.success; ++v)
            out.success = static_cast<double>(good_rounds[v]) >= params.h_prime;
    } else {
        out.success = true;
        for (Vertex v = 0; v < n && out.success; ++v)
            out.success = unique_colour_count(g, out.partial, v) >= params.h;
    }
    return out;
}

} // namespace

ProcedureOutcome run_procedure(const Graph& g, const ProcedureParams& params, const RunOptions& options)
{
    const auto stats = degree_stats(g);
    if (stats.isolated)
        throw Error(ErrorKind::precondition, "graph has an isolated vertex");
    if (params.h < 1 || params.h > stats.min_degree)
        throw Error(ErrorKind::precondition, "h must satisfy 1 <= h <= min degree");
    if (params.max_degree != stats.max_degree || params.min_degree != stats.min_degree)
        throw Error(ErrorKind::precondition, "params were computed for different degrees than this graph has");
    if (!(params.p_select >= 0.0 && params.p_select <= 1.0))
        throw Error(ErrorKind::precondition, "selection probability must lie in [0, 1]");

    const std::size_t n = g.vertex_count();
    ProcedureOutcome outcome;
    outcome.params = params;

    for (std::size_t attempt = 0; attempt <= params.max_restarts; ++attempt) {
        auto result = run_attempt(g, params, attempt, options.record_trace);
        outcome.restarts = attempt;
        outcome.trace = std::move(result.trace);
        if (!result.success)
            continue;

        const auto top = static_cast<Colour>(params.rounds);
        outcome.partial = std::move(result.partial);
        outcome.colouring = complete_greedily(g, outcome.partial, top);
        outcome.partial_palette_size = outcome.partial.colours_used();
        outcome.fresh_colours_used = outcome.colouring.colours_used() - outcome.partial_palette_size;
        outcome.per_vertex_unique.resize(n);
        for (Vertex v = 0; v < n; ++v) {
            outcome.per_vertex_unique[v] = unique_colour_count(g, outcome.partial, v);
            if (outcome.partial.is_coloured(v))
                continue;
            std::size_t open = 0;
            for (Vertex w : g.neighbours(v))
                open += !outcome.partial.is_coloured(w);
            outcome.residual_max_degree = std::max(outcome.residual_max_degree, open);
        }
        break;
    }

    if (outcome.colouring.size() != n || !outcome.colouring.is_total()) {
        outcome.fallback_used = true;
        outcome.partial = PartialColouring();
        outcome.colouring = greedy_square_colouring(g);
        outcome.partial_palette_size = 0;
        outcome.fresh_colours_used = outcome.colouring.colours_used();
        outcome.residual_max_degree = stats.max_degree;
        outcome.per_vertex_unique.resize(n);
        for (Vertex v = 0; v < n; ++v)
            outcome.per_vertex_unique[v] = unique_colour_count(g, outcome.colouring, v);
    }
    outcome.total_colours = outcome.colouring.colours_used();

    const auto report = verify_h_conflict_free(g, outcome.colouring, params.h);
    if (!report.h_cf_ok)
        throw Error(ErrorKind::internal, "procedure produced a colouring that is not h-conflict-free");
    return outcome;
}

bool completion_preserves_uniqueness(const Graph& g, const ProcedureOutcome& outcome)
{
    if (outcome.fallback_used)
        throw Error(ErrorKind::precondition, "fallback outcomes have no completion step");
    const auto top = static_cast<Colour>(outcome.params.rounds);
    std::vector<Colour> scratch;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (unique_up_to(g, outcome.partial.raw(), v, top, scratch) !=
            unique_up_to(g, outcome.colouring.raw(), v, top, scratch))
            return false;
    return true;
}

} // namespace cfcolor
