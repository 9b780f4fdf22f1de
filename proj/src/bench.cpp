#include "cfcolor/bench.hpp"

#include "cfcolor/error.hpp"
#include "cfcolor/generators.hpp"
#include "cfcolor/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

namespace cfcolor {

void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& body)
{
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, count);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < threads; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure)
                        failure = std::current_exception();
                }
            }
        });
    for (auto& t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
}

std::uint64_t trial_seed(std::uint64_t master, std::size_t trial)
{
    return derive_seed(master, {0x7472, trial});
}

// ---- colour ----------------------------------------------------------------

std::vector<ColourRun> cmd_colour(const Graph& g, const ColourTask& task)
{
    if (task.trials < 1)
        throw Error(ErrorKind::invalid_input, "trials must be at least 1");
    // Validates h against the graph before any work is farmed out.
    params_for(g, task.h, task.mode, task.seed, task.max_restarts);

    std::vector<ColourRun> runs(task.trials);
    parallel_for(task.trials, task.threads, [&](std::size_t t) {
        ColourRun& run = runs[t];
        run.trial = t;
        run.seed = trial_seed(task.seed, t);
        run.outcome = run_procedure(g, params_for(g, task.h, task.mode, run.seed, task.max_restarts));
        const auto report = verify_h_conflict_free(g, run.outcome.colouring, task.h);
        if (!report.h_cf_ok)
            throw Error(ErrorKind::internal, "trial " + std::to_string(t) + " produced an invalid colouring");
        run.verified = true;
        run.min_unique = *std::min_element(report.unique_counts.begin(), report.unique_counts.end());
        run.mean_unique = static_cast<double>(std::accumulate(report.unique_counts.begin(),
                                                              report.unique_counts.end(), std::size_t{0})) /
                          static_cast<double>(report.unique_counts.size());
    });
    return runs;
}

Row colour_record(const Graph& g, const ColourRun& run)
{
    const auto& o = run.outcome;
    const auto& p = o.params;
    std::size_t min_partial = 0;
    if (!o.per_vertex_unique.empty())
        min_partial = *std::min_element(o.per_vertex_unique.begin(), o.per_vertex_unique.end());
    Row row;
    row.add("trial", run.trial)
        .add("seed", FieldValue(run.seed))
        .add("n", g.vertex_count())
        .add("max_degree", p.max_degree)
        .add("min_degree", p.min_degree)
        .add("h", p.h)
        .add("h_prime", FieldValue(p.h_prime))
        .add("rounds", p.rounds)
        .add("mode", std::string(to_string(p.mode)))
        .add("theorem_preconditions_met", FieldValue(p.theorem_preconditions_met))
        .add("restarts", o.restarts)
        .add("fallback_used", FieldValue(o.fallback_used))
        .add("partial_palette_size", o.partial_palette_size)
        .add("fresh_colours_used", o.fresh_colours_used)
        .add("total_colours", o.total_colours)
        .add("residual_max_degree", o.residual_max_degree)
        .add("min_partial_unique", min_partial)
        .add("min_unique", run.min_unique)
        .add("mean_unique", FieldValue(run.mean_unique))
        .add("connected", FieldValue(is_connected(g)))
        .add("regular", FieldValue(p.max_degree == p.min_degree))
        .add("verified", FieldValue(run.verified));
    return row;
}

// ---- estimate-events ---------------------------------------------------------

Estimate estimate_from(std::span<const double> samples)
{
    Estimate e;
    e.samples = samples.size();
    if (samples.empty())
        return e;
    const double n = static_cast<double>(samples.size());
    e.mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
    if (samples.size() > 1) {
        double ss = 0.0;
        for (double x : samples)
            ss += (x - e.mean) * (x - e.mean);
        e.std_error = std::sqrt(ss / (n - 1.0) / n);
    }
    return e;
}

double round_one_lower_bound(std::size_t degree, std::size_t max_degree, double p)
{
    const double window = static_cast<double>((degree + 1) / 2);
    return window * p * std::pow(1.0 - p, static_cast<double>(degree + max_degree) - 1.0);
}

namespace {

struct FullSample {
    double good_rounds = 0.0;
    double coloured_neighbours = 0.0;
    double choices = 0.0;
};

FullSample full_sample(const Graph& g, const ProcedureParams& params, Vertex v, std::uint64_t seed)
{
    const auto nb = g.neighbours(v);
    PendantLedger ledger(g, std::vector<Vertex>{v});
    PartialColouring coloured(g.vertex_count());
    FullSample s;
    for (std::size_t round = 1; round <= params.rounds; ++round) {
        ledger.extend_to(round);
        SeededSelection source(seed, 0, round, params.p_select);
        auto trace = plan_round(g, ledger, coloured, round, source);
        s.good_rounds += event_round_unique(g, ledger, trace, coloured, v);
        for (Vertex u : trace.chosen_real)
            s.choices += std::binary_search(nb.begin(), nb.end(), u);
        for (Vertex u : trace.newly_coloured)
            s.coloured_neighbours += std::binary_search(nb.begin(), nb.end(), u);
        apply_round(trace, ledger, coloured);
    }
    return s;
}

bool thin(const Estimate& e)
{
    // Normal-approximation margins are unreliable with fewer than ten
    // observations on either side of a proportion.
    const double n = static_cast<double>(e.samples);
    return e.samples < 30 || e.mean * n < 10.0 || (1.0 - e.mean) * n < 10.0;
}

} // namespace

EventStatistics cmd_estimate_events(const Graph& g, const EstimateTask& task)
{
    if (task.trials < 1 || task.round_trials < 1)
        throw Error(ErrorKind::invalid_input, "trials must be at least 1");
    EventStatistics stats;
    stats.params = params_for(g, task.h, Mode::faithful, task.seed, 0);
    if (task.p_select) {
        if (!(*task.p_select >= 0.0 && *task.p_select <= 1.0))
            throw Error(ErrorKind::invalid_input, "p_select must lie in [0, 1]");
        stats.params.p_select = *task.p_select;
    }
    if (task.target) {
        if (*task.target >= g.vertex_count())
            throw Error(ErrorKind::out_of_range, "target vertex out of range");
        stats.target = *task.target;
    } else {
        SplitMix64 rng(derive_seed(task.seed, {0x7667}));
        stats.target = static_cast<Vertex>(uniform_below(rng, g.vertex_count()));
    }
    const Vertex v = stats.target;
    const auto& params = stats.params;
    stats.degree = g.degree(v);

    std::vector<double> round_one(task.round_trials);
    parallel_for(task.round_trials, task.threads, [&](std::size_t r) {
        PendantLedger ledger = PendantLedger::disabled(g);
        PartialColouring empty(g.vertex_count());
        SeededSelection source(derive_seed(task.seed, {0xa1, r}), 0, 1, params.p_select);
        auto trace = plan_round(g, ledger, empty, 1, source);
        round_one[r] = event_round_unique(g, ledger, trace, empty, v) ? 1.0 : 0.0;
    });
    stats.round_one_unique = estimate_from(round_one);

    std::vector<FullSample> full(task.trials);
    parallel_for(task.trials, task.threads,
                 [&](std::size_t s) { full[s] = full_sample(g, params, v, derive_seed(task.seed, {0xf0, s})); });
    std::vector<double> not_a(task.trials), not_b(task.trials), y(task.trials);
    for (std::size_t s = 0; s < task.trials; ++s) {
        not_a[s] = full[s].good_rounds < params.h_prime ? 1.0 : 0.0;
        not_b[s] = 2.0 * full[s].coloured_neighbours > static_cast<double>(stats.degree) ? 1.0 : 0.0;
        y[s] = full[s].choices;
    }
    stats.not_enough_rounds = estimate_from(not_a);
    stats.too_many_coloured = estimate_from(not_b);
    stats.neighbour_choices = estimate_from(y);

    const double delta = static_cast<double>(params.max_degree);
    stats.round_one_bound = round_one_lower_bound(stats.degree, params.max_degree, params.p_select);
    stats.round_one_simplified = static_cast<double>(stats.degree) / (15.0 * delta);
    stats.expected_choices = static_cast<double>(params.rounds) * static_cast<double>(stats.degree) * params.p_select;
    if (params.theorem_preconditions_met)
        stats.choices_cap = 0.42 * static_cast<double>(stats.degree);
    stats.failure_bound = std::pow(delta, -5.0);
    stats.low_trials_warning = thin(stats.round_one_unique) || task.trials < 30;
    return stats;
}

Row estimate_record(const EventStatistics& s)
{
    Row row;
    row.add("target", static_cast<std::size_t>(s.target))
        .add("degree", s.degree)
        .add("max_degree", s.params.max_degree)
        .add("min_degree", s.params.min_degree)
        .add("h", s.params.h)
        .add("h_prime", FieldValue(s.params.h_prime))
        .add("rounds", s.params.rounds)
        .add("p_select", FieldValue(s.params.p_select))
        .add("theorem_preconditions_met", FieldValue(s.params.theorem_preconditions_met))
        .add("round_one_unique", FieldValue(s.round_one_unique.mean))
        .add("round_one_unique_se", FieldValue(s.round_one_unique.std_error))
        .add("round_one_trials", s.round_one_unique.samples)
        .add("round_one_bound", FieldValue(s.round_one_bound))
        .add("round_one_simplified", FieldValue(s.round_one_simplified))
        .add("not_enough_rounds", FieldValue(s.not_enough_rounds.mean))
        .add("not_enough_rounds_se", FieldValue(s.not_enough_rounds.std_error))
        .add("too_many_coloured", FieldValue(s.too_many_coloured.mean))
        .add("too_many_coloured_se", FieldValue(s.too_many_coloured.std_error))
        .add("failure_bound", FieldValue(s.failure_bound))
        .add("neighbour_choices_mean", FieldValue(s.neighbour_choices.mean))
        .add("neighbour_choices_se", FieldValue(s.neighbour_choices.std_error))
        .add("expected_neighbour_choices", FieldValue(s.expected_choices))
        .add("neighbour_choices_cap", s.choices_cap ? FieldValue(*s.choices_cap) : FieldValue(std::string("n/a")))
        .add("trials", s.neighbour_choices.samples)
        .add("low_trials_warning", FieldValue(s.low_trials_warning));
    return row;
}

// ---- bound-report ----------------------------------------------------------

std::string_view to_string(Regime regime)
{
    switch (regime) {
    case Regime::asserted: return "asserted";
    case Regime::informational: return "informational";
    case Regime::not_applicable: return "not_applicable";
    }
    return "not_applicable";
}

BoundInput bound_input(const Graph& g, const ColourRun& run)
{
    BoundInput in;
    in.source = "procedure";
    in.target = "pcf";
    in.n = g.vertex_count();
    in.max_degree = run.outcome.params.max_degree;
    in.min_degree = run.outcome.params.min_degree;
    in.h = run.outcome.params.h;
    in.total_colours = run.outcome.total_colours;
    in.fallback_used = run.outcome.fallback_used;
    in.connected = is_connected(g);
    in.regular = in.max_degree == in.min_degree;
    return in;
}

BoundInput bound_input(const Graph& g, const Target& target, const ChromaticResult& result)
{
    if (result.status != ValueStatus::exact)
        throw Error(ErrorKind::invalid_input, "only exact values can enter a bound report");
    const auto stats = degree_stats(g);
    BoundInput in;
    in.source = "exact";
    switch (target.kind) {
    case TargetKind::proper: in.target = "proper"; break;
    case TargetKind::pcf: in.target = "pcf"; break;
    case TargetKind::odd: in.target = "odd"; break;
    case TargetKind::square: in.target = "square"; break;
    }
    in.n = g.vertex_count();
    in.max_degree = stats.max_degree;
    in.min_degree = stats.min_degree;
    in.h = target.kind == TargetKind::pcf ? target.h : 1;
    in.total_colours = result.value;
    in.connected = is_connected(g);
    in.regular = stats.min_degree == stats.max_degree;
    return in;
}

std::vector<std::string> threshold_names()
{
    return {"floor_5delta_over_2", "below_1_4delta", "min_degree_bound", "delta_plus_600ln", "odd_delta_plus_600ln"};
}

BoundRow bound_row(const BoundInput& in)
{
    BoundRow row;
    row.input = in;
    const double delta = static_cast<double>(in.max_degree);
    const double min_deg = static_cast<double>(in.min_degree);
    const double h = static_cast<double>(in.h);
    const double ln_delta = in.max_degree > 0 ? std::log(delta) : 0.0;
    const double total = static_cast<double>(in.total_colours);

    // The asymptotic bounds share one large-degree regime; with h >= 1 the
    // h <= delta/75 clause also forces min degree >= 75.
    row.preconditions_met = in.max_degree >= 2 && min_deg >= 1500.0 * ln_delta && h <= min_deg / 75.0;
    const Regime asymptotic = row.preconditions_met ? Regime::asserted : Regime::informational;
    const bool cf_target = in.target == "pcf";

    auto add = [&](std::string name, double threshold, bool strict, bool applies, Regime regime) {
        ThresholdCheck check;
        check.name = std::move(name);
        check.threshold = threshold;
        check.strict = strict;
        check.regime = applies ? regime : Regime::not_applicable;
        check.satisfied = strict ? total < threshold : total <= threshold;
        row.checks.push_back(std::move(check));
    };

    // The 5Delta/2 bound is about the optimum; only an exact value can
    // violate it.
    add("floor_5delta_over_2", std::floor(5.0 * delta / 2.0), false,
        cf_target && in.h == 1 && in.connected && in.max_degree >= 1,
        in.source == "exact" ? Regime::asserted : Regime::informational);
    add("below_1_4delta", 1.4 * delta, true, cf_target, asymptotic);
    add("min_degree_bound",
        in.min_degree > 0 ? delta * (1.0 + std::max(30.0 * h / min_deg, 600.0 * ln_delta / min_deg)) : 0.0, true,
        cf_target && in.min_degree > 0, asymptotic);
    add("delta_plus_600ln", delta + 600.0 * ln_delta, true,
        cf_target && in.regular && h <= 20.0 * ln_delta, asymptotic);
    add("odd_delta_plus_600ln", delta + 600.0 * ln_delta, true, in.target == "odd" && in.regular, asymptotic);

    if (in.max_degree > 0) {
        row.lll_p = std::pow(delta, -5.0);
        row.lll_dependency = 2.0 * std::pow(delta, 4.0);
        row.lll_product = std::exp(1.0) * row.lll_p * (row.lll_dependency + 1.0);
        row.lll_condition = row.lll_product <= 1.0;
    }
    return row;
}

BoundReport cmd_bound_report(std::span<const BoundInput> inputs)
{
    BoundReport report;
    for (const auto& name : threshold_names())
        report.summary.push_back(ThresholdSummary{name});
    for (const auto& in : inputs) {
        auto row = bound_row(in);
        if (in.fallback_used) {
            ++report.fallback_rows;
        } else {
            for (std::size_t i = 0; i < row.checks.size(); ++i) {
                const auto& check = row.checks[i];
                auto& sum = report.summary[i];
                if (check.regime == Regime::not_applicable)
                    continue;
                ++sum.evaluated;
                sum.satisfied += check.satisfied;
                if (check.regime == Regime::asserted) {
                    ++sum.asserted;
                    sum.asserted_violations += !check.satisfied;
                }
            }
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

Row bound_record(const BoundRow& r)
{
    Row row;
    row.add("source", r.input.source)
        .add("target", r.input.target)
        .add("n", r.input.n)
        .add("max_degree", r.input.max_degree)
        .add("min_degree", r.input.min_degree)
        .add("h", r.input.h)
        .add("total_colours", r.input.total_colours)
        .add("fallback_used", FieldValue(r.input.fallback_used))
        .add("connected", FieldValue(r.input.connected))
        .add("regular", FieldValue(r.input.regular))
        .add("theorem_preconditions_met", FieldValue(r.preconditions_met));
    for (const auto& c : r.checks) {
        row.add(c.name + "_threshold", FieldValue(c.threshold));
        row.add(c.name + "_satisfied", FieldValue(c.satisfied));
        row.add(c.name + "_regime", std::string(to_string(c.regime)));
    }
    row.add("lll_p", FieldValue(r.lll_p))
        .add("lll_dependency", FieldValue(r.lll_dependency))
        .add("lll_product", FieldValue(r.lll_product))
        .add("lll_condition", FieldValue(r.lll_condition));
    return row;
}

nlohmann::ordered_json to_json(const BoundReport& report)
{
    std::vector<Row> rows;
    for (const auto& r : report.rows)
        rows.push_back(bound_record(r));
    nlohmann::ordered_json out;
    out["rows"] = to_json(rows);
    auto& summary = out["summary"] = nlohmann::ordered_json::array();
    for (const auto& s : report.summary)
        summary.push_back({{"name", s.name},
                           {"evaluated", s.evaluated},
                           {"satisfied", s.satisfied},
                           {"asserted", s.asserted},
                           {"asserted_violations", s.asserted_violations}});
    out["fallback_rows"] = report.fallback_rows;
    return out;
}

// ---- sweep -----------------------------------------------------------------

std::vector<SweepRow> feasibility_sweep(const SweepTask& task)
{
    std::vector<SweepRow> rows;
    for (std::size_t delta : task.degrees) {
        GeneratorSpec spec;
        spec.family = Family::random_regular;
        spec.n = task.vertices_per_degree * delta;
        spec.d = delta;
        spec.seed = derive_seed(task.seed, {0x5e, delta});
        const Graph g = generate(spec);

        ColourTask colour;
        colour.h = task.h;
        colour.mode = Mode::practical;
        colour.trials = task.trials;
        colour.seed = derive_seed(task.seed, {0x5f, delta});
        colour.threads = task.threads;
        const auto runs = cmd_colour(g, colour);

        SweepRow row;
        row.max_degree = delta;
        row.n = g.vertex_count();
        row.trials = runs.size();
        row.rounds = runs.front().outcome.params.rounds;
        row.min_total_colours = runs.front().outcome.total_colours;
        double total = 0.0;
        for (const auto& run : runs) {
            row.valid_runs += run.verified;
            row.fallback_runs += run.outcome.fallback_used;
            total += static_cast<double>(run.outcome.total_colours);
            row.min_total_colours = std::min(row.min_total_colours, run.outcome.total_colours);
            row.max_total_colours = std::max(row.max_total_colours, run.outcome.total_colours);
        }
        row.mean_total_colours = total / static_cast<double>(runs.size());
        row.mean_ratio = row.mean_total_colours / static_cast<double>(delta);
        rows.push_back(row);
    }
    return rows;
}

Row sweep_record(const SweepRow& r)
{
    Row row;
    row.add("max_degree", r.max_degree)
        .add("n", r.n)
        .add("rounds", r.rounds)
        .add("trials", r.trials)
        .add("valid_runs", r.valid_runs)
        .add("fallback_runs", r.fallback_runs)
        .add("mean_total_colours", FieldValue(r.mean_total_colours))
        .add("min_total_colours", r.min_total_colours)
        .add("max_total_colours", r.max_total_colours)
        .add("mean_ratio", FieldValue(r.mean_ratio));
    return row;
}

} // namespace cfcolor
