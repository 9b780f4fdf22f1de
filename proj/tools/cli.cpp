#include "cli.hpp"

#include "cfcolor/bench.hpp"
#include "cfcolor/colouring.hpp"
#include "cfcolor/error.hpp"
#include "cfcolor/exact.hpp"
#include "cfcolor/generators.hpp"
#include "cfcolor/graph_io.hpp"
#include "cfcolor/procedure.hpp"
#include "cfcolor/records.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace cfcolor::cli {

namespace {

struct GraphOptions {
    std::string graph;
    std::string graph_format;
    std::string family;
    std::size_t n = 0;
    std::size_t d = 0;
    std::size_t a = 0;
    std::size_t b = 0;
    std::size_t q = 0;
    std::size_t k = 0;
    double p = 0.0;
};

struct OutputOptions {
    std::string format = "json";
    std::string out;
};

struct Common {
    GraphOptions graph;
    OutputOptions output;
    std::uint64_t seed = 0;
    std::size_t threads = 0;
};

void add_graph_options(CLI::App* sub, GraphOptions& g)
{
    sub->add_option("--graph", g.graph, "Graph file (edge list or DIMACS .col)");
    sub->add_option("--graph-format", g.graph_format, "edge_list or dimacs_col (default: by extension)");
    sub->add_option("--family", g.family,
                    "cycle|path|complete|complete_bipartite|star|random_regular|gnp|mols_graph");
    sub->add_option("--n", g.n, "Vertex count");
    sub->add_option("--d", g.d, "Degree (random_regular)");
    sub->add_option("--a", g.a, "Left side (complete_bipartite)");
    sub->add_option("--b", g.b, "Right side (complete_bipartite)");
    sub->add_option("--p", g.p, "Edge probability (gnp)");
    sub->add_option("--q", g.q, "Prime order (mols_graph)");
    sub->add_option("--k", g.k, "Number of squares (mols_graph)");
}

void add_output_options(CLI::App* sub, OutputOptions& o)
{
    sub->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", o.out, "Write output here instead of stdout");
}

Graph load_graph(const GraphOptions& opts, std::uint64_t seed)
{
    if (!opts.graph.empty()) {
        GraphFormat format = format_from_path(opts.graph);
        if (!opts.graph_format.empty()) {
            auto parsed = parse_graph_format(opts.graph_format);
            if (!parsed)
                throw Error(ErrorKind::invalid_input, "unknown graph format '" + opts.graph_format + "'");
            format = *parsed;
        }
        return read_graph(std::filesystem::path(opts.graph), format);
    }
    if (opts.family.empty())
        throw Error(ErrorKind::invalid_input, "give either --graph FILE or --family F");
    auto family = parse_family(opts.family);
    if (!family)
        throw Error(ErrorKind::invalid_input, "unknown family '" + opts.family + "'");
    GeneratorSpec spec;
    spec.family = *family;
    spec.n = opts.n;
    spec.d = opts.d;
    spec.a = opts.a;
    spec.b = opts.b;
    spec.p = opts.p;
    spec.q = opts.q;
    spec.k = opts.k;
    spec.seed = seed;
    return generate(spec);
}

std::optional<std::string> env(const char* name)
{
    if (const char* value = std::getenv(name); value && *value)
        return std::string(value);
    return std::nullopt;
}

std::size_t env_max_restarts()
{
    if (auto value = env("CFCOLOR_MAX_RESTARTS")) {
        try {
            return std::stoul(*value);
        } catch (const std::exception&) {
            throw Error(ErrorKind::invalid_input, "CFCOLOR_MAX_RESTARTS is not a non-negative integer");
        }
    }
    return kDefaultMaxRestarts;
}

std::optional<double> env_time_budget()
{
    if (auto value = env("CFCOLOR_TIME_BUDGET_SECS")) {
        try {
            return std::stod(*value);
        } catch (const std::exception&) {
            throw Error(ErrorKind::invalid_input, "CFCOLOR_TIME_BUDGET_SECS is not a number");
        }
    }
    return std::nullopt;
}

class Sink {
public:
    Sink(const OutputOptions& opts, std::ostream& fallback) : out_(&fallback)
    {
        if (!opts.out.empty()) {
            file_.open(opts.out);
            if (!file_)
                throw Error(ErrorKind::invalid_input, "cannot open " + opts.out + " for writing");
            out_ = &file_;
        }
    }
    std::ostream& stream() { return *out_; }

private:
    std::ofstream file_;
    std::ostream* out_;
};

void emit(const OutputOptions& opts, std::ostream& out, const std::string& command, std::span<const Row> rows,
          nlohmann::ordered_json extra = nullptr)
{
    Sink sink(opts, out);
    if (opts.format == "csv") {
        write_csv(sink.stream(), rows);
        return;
    }
    auto doc = envelope(command, to_json(rows));
    if (!extra.is_null())
        for (auto& [key, value] : extra.items())
            doc[key] = value;
    sink.stream() << doc.dump(2) << '\n';
}

std::string colouring_text(const PartialColouring& c)
{
    std::string text;
    for (auto colour : c.raw()) {
        if (!text.empty())
            text += ' ';
        text += std::to_string(colour);
    }
    return text;
}

Target make_target(const std::string& name, std::size_t h)
{
    auto kind = parse_target_kind(name);
    if (!kind)
        throw Error(ErrorKind::invalid_input, "unknown target '" + name + "'");
    return Target{*kind, *kind == TargetKind::pcf ? h : 0};
}

// Reads records emitted by `colour` or `exact`.
std::vector<BoundInput> inputs_from_records(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::invalid_input, "cannot open " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::parse, std::string("records file: ") + e.what());
    }
    if (!doc.contains("records") || !doc["records"].is_array())
        throw Error(ErrorKind::parse, "records file has no 'records' array");
    std::vector<BoundInput> inputs;
    const std::string command = doc.value("command", "");
    for (const auto& r : doc["records"]) {
        try {
            BoundInput bi;
            if (command == "exact") {
                if (r.at("status") != "exact")
                    continue;
                bi.source = "exact";
                bi.target = r.at("target_kind").get<std::string>();
                bi.total_colours = r.at("value").get<std::size_t>();
            } else {
                bi.source = "procedure";
                bi.target = "pcf";
                bi.total_colours = r.at("total_colours").get<std::size_t>();
                bi.fallback_used = r.at("fallback_used").get<bool>();
            }
            bi.n = r.at("n").get<std::size_t>();
            bi.max_degree = r.at("max_degree").get<std::size_t>();
            bi.min_degree = r.at("min_degree").get<std::size_t>();
            bi.h = r.at("h").get<std::size_t>();
            bi.connected = r.at("connected").get<bool>();
            bi.regular = r.at("regular").get<bool>();
            inputs.push_back(bi);
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorKind::parse, std::string("malformed record: ") + e.what());
        }
    }
    return inputs;
}

std::vector<std::size_t> parse_degree_list(const std::string& text)
{
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stoul(item));
        } catch (const std::exception&) {
            throw Error(ErrorKind::invalid_input, "bad degree list '" + text + "'");
        }
    }
    return out;
}

void print_error(std::ostream& err, std::string_view kind, const std::string& message)
{
    nlohmann::ordered_json doc;
    doc["schema"] = kSchema;
    doc["error"] = {{"kind", kind}, {"message", message}};
    err << doc.dump() << '\n';
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Conflict-free proper colourings: generators, exact solver, randomized procedure, reports",
                 "cfcolor"};
    app.require_subcommand(1);
    // "-h" would clash with the --h option of the subcommands.
    app.set_help_flag("--help", "Print this help message and exit");

    Common common;
    std::size_t h = 1;
    std::string mode = "practical";
    std::size_t trials = 1;
    std::optional<std::size_t> max_restarts;
    std::string colouring_out;
    std::string target_name = "pcf";
    std::optional<std::size_t> k_fixed;
    std::optional<std::size_t> k_max;
    std::optional<double> time_budget;
    std::string colouring_path;
    std::optional<std::size_t> vertex;
    std::optional<std::size_t> round_trials;
    std::optional<double> p_select;
    std::string records_path;
    std::string sweep;
    std::size_t vertices_per_degree = 4;

    auto with_common = [&](CLI::App* sub, bool graph = true) {
        if (graph)
            add_graph_options(sub, common.graph);
        add_output_options(sub, common.output);
        sub->add_option("--seed", common.seed, "Master seed");
        sub->add_option("--threads", common.threads, "Worker threads (0 = all cores)");
    };

    auto* generate_cmd = app.add_subcommand("generate", "Generate a graph and print it");
    add_graph_options(generate_cmd, common.graph);
    generate_cmd->add_option("--seed", common.seed, "Generator seed");
    generate_cmd->add_option("--out", common.output.out, "Write output here instead of stdout");

    auto* colour_cmd = app.add_subcommand("colour", "Run the randomized procedure");
    with_common(colour_cmd);
    colour_cmd->add_option("--h", h, "Required unique colours per neighbourhood");
    colour_cmd->add_option("--mode", mode, "faithful or practical")->check(CLI::IsMember({"faithful", "practical"}));
    colour_cmd->add_option("--trials", trials, "Independent runs");
    colour_cmd->add_option("--max-restarts", max_restarts, "Extra attempts before the fallback");
    colour_cmd->add_option("--colouring-out", colouring_out, "Write trial 0's colouring here");

    auto* exact_cmd = app.add_subcommand("exact", "Exact chromatic values on small graphs");
    with_common(exact_cmd);
    exact_cmd->add_option("--target", target_name, "pcf, odd, square or proper");
    exact_cmd->add_option("--h", h, "h for the pcf target");
    exact_cmd->add_option("--colours", k_fixed, "Only decide whether this many colours suffice");
    exact_cmd->add_option("--k-max", k_max, "Largest palette to try (default n)");
    exact_cmd->add_option("--time-budget", time_budget, "Wall-clock budget in seconds");

    auto* verify_cmd = app.add_subcommand("verify", "Check a colouring");
    with_common(verify_cmd);
    verify_cmd->add_option("--colouring", colouring_path, "Colouring file ('vertex colour' lines)")->required();
    verify_cmd->add_option("--h", h, "Required unique colours per neighbourhood");

    auto* estimate_cmd = app.add_subcommand("estimate-events", "Monte-Carlo estimates of the round events");
    with_common(estimate_cmd);
    estimate_cmd->add_option("--vertex", vertex, "Target vertex (default: sampled from the seed)");
    estimate_cmd->add_option("--h", h, "Required unique colours per neighbourhood");
    estimate_cmd->add_option("--trials", trials, "Full-procedure samples")->default_val(10000);
    estimate_cmd->add_option("--round-trials", round_trials, "Round-1 samples (default 100000)");
    estimate_cmd->add_option("--p-select", p_select, "Debug: override the selection probability");

    auto* bound_cmd = app.add_subcommand("bound-report", "Compare colour counts with the analytic thresholds");
    with_common(bound_cmd);
    bound_cmd->add_option("--records", records_path, "JSON output of 'colour' or 'exact'");
    bound_cmd->add_option("--sweep", sweep, "Comma-separated degrees for a regular-graph feasibility sweep");
    bound_cmd->add_option("--vertices-per-degree", vertices_per_degree, "Sweep graphs have this many * Delta vertices");
    bound_cmd->add_option("--h", h, "h for runs made by this command");
    bound_cmd->add_option("--mode", mode, "faithful or practical")->check(CLI::IsMember({"faithful", "practical"}));
    bound_cmd->add_option("--trials", trials, "Runs per graph");
    bound_cmd->add_option("--max-restarts", max_restarts, "Extra attempts before the fallback");

    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        print_error(err, "usage", e.what());
        return 2;
    }

    auto emit_report = [&](std::span<const BoundInput> inputs) {
        const auto report = cmd_bound_report(inputs);
        std::vector<Row> rows;
        for (const auto& r : report.rows)
            rows.push_back(bound_record(r));
        auto json = to_json(report);
        emit(common.output, out, "bound-report", rows,
             {{"summary", json["summary"]}, {"fallback_rows", json["fallback_rows"]}});
    };

    auto run_bound_only = [&]() {
        if (!sweep.empty()) {
            SweepTask task;
            task.degrees = parse_degree_list(sweep);
            task.vertices_per_degree = vertices_per_degree;
            task.trials = trials;
            task.h = h;
            task.seed = common.seed;
            task.threads = common.threads;
            std::vector<Row> rows;
            for (const auto& r : feasibility_sweep(task))
                rows.push_back(sweep_record(r));
            emit(common.output, out, "bound-report-sweep", rows);
            return 0;
        }
        emit_report(inputs_from_records(records_path));
        return 0;
    };

    try {
        const std::size_t restarts = max_restarts.value_or(env_max_restarts());
        if (!time_budget)
            time_budget = env_time_budget();

        if (generate_cmd->parsed()) {
            const Graph g = load_graph(common.graph, common.seed);
            GraphFormat format = GraphFormat::edge_list;
            if (!common.graph.graph_format.empty()) {
                auto parsed = parse_graph_format(common.graph.graph_format);
                if (!parsed)
                    throw Error(ErrorKind::invalid_input, "unknown graph format");
                format = *parsed;
            }
            Sink sink(common.output, out);
            write_graph(sink.stream(), g, format);
            return 0;
        }

        if (bound_cmd->parsed() && (!sweep.empty() || !records_path.empty()))
            return run_bound_only();

        const Graph g = load_graph(common.graph, common.seed);

        if (colour_cmd->parsed()) {
            ColourTask task;
            task.h = h;
            task.mode = *parse_mode(mode);
            task.trials = trials;
            task.seed = common.seed;
            task.max_restarts = restarts;
            task.threads = common.threads;
            const auto runs = cmd_colour(g, task);
            std::vector<Row> rows;
            for (const auto& run : runs)
                rows.push_back(colour_record(g, run));
            if (!colouring_out.empty()) {
                std::ofstream file(colouring_out);
                if (!file)
                    throw Error(ErrorKind::invalid_input, "cannot open " + colouring_out);
                write_colouring(file, runs.front().outcome.colouring);
            }
            emit(common.output, out, "colour", rows);
            return 0;
        }

        if (exact_cmd->parsed()) {
            const Target target = make_target(target_name, h);
            SolveOptions options;
            options.time_budget_secs = time_budget;
            const auto stats = degree_stats(g);
            Row row;
            row.add("target", to_string(target))
                .add("target_kind", target_name)
                .add("h", target.kind == TargetKind::pcf ? h : std::size_t{1})
                .add("n", g.vertex_count())
                .add("max_degree", stats.max_degree)
                .add("min_degree", stats.min_degree)
                .add("connected", FieldValue(is_connected(g)))
                .add("regular", FieldValue(stats.min_degree == stats.max_degree));
            if (k_fixed) {
                const auto result = find_colouring(g, target, *k_fixed, options);
                row.add("k", *k_fixed)
                    .add("status", std::string(to_string(result.status)))
                    .add("colouring", result.colouring ? colouring_text(*result.colouring) : std::string())
                    .add("nodes_explored", FieldValue(result.nodes_explored));
            } else {
                const auto result = chromatic_value(g, target, k_max.value_or(g.vertex_count()), options);
                row.add("k", k_max.value_or(g.vertex_count()))
                    .add("status", std::string(to_string(result.status)))
                    .add("value", result.value)
                    .add("lower", result.lower)
                    .add("upper", result.upper)
                    .add("colouring", result.witness ? colouring_text(*result.witness) : std::string())
                    .add("nodes_explored", FieldValue(result.nodes_explored));
            }
            std::vector<Row> rows{row};
            emit(common.output, out, "exact", rows);
            return 0;
        }

        if (verify_cmd->parsed()) {
            std::ifstream file(colouring_path);
            if (!file)
                throw Error(ErrorKind::invalid_input, "cannot open " + colouring_path);
            const auto c = read_colouring(file, g.vertex_count());
            const auto report = verify_h_conflict_free(g, c, h);
            std::size_t min_unique = report.unique_counts.empty() ? 0 : report.unique_counts.front();
            for (auto u : report.unique_counts)
                min_unique = std::min(min_unique, u);
            std::string violations;
            for (auto [u, v] : report.violations)
                violations += (violations.empty() ? "" : " ") + std::to_string(u) + "-" + std::to_string(v);
            Row row;
            row.add("n", g.vertex_count())
                .add("h", h)
                .add("proper", FieldValue(report.proper))
                .add("violations", violations)
                .add("total", FieldValue(report.total))
                .add("min_unique", min_unique)
                .add("h_cf_ok", FieldValue(report.h_cf_ok))
                .add("odd_ok", FieldValue(report.odd_all_ok))
                .add("square_ok", FieldValue(verify_square(g, c)))
                .add("colours_used", report.colours_used);
            std::vector<Row> rows{row};
            emit(common.output, out, "verify", rows);
            return 0;
        }

        if (estimate_cmd->parsed()) {
            EstimateTask task;
            if (vertex)
                task.target = static_cast<Vertex>(*vertex);
            task.h = h;
            task.trials = trials;
            task.round_trials = round_trials.value_or(100'000);
            task.seed = common.seed;
            task.p_select = p_select;
            task.threads = common.threads;
            std::vector<Row> rows{estimate_record(cmd_estimate_events(g, task))};
            emit(common.output, out, "estimate-events", rows);
            return 0;
        }

        if (bound_cmd->parsed()) {
            ColourTask task;
            task.h = h;
            task.mode = *parse_mode(mode);
            task.trials = trials;
            task.seed = common.seed;
            task.max_restarts = restarts;
            task.threads = common.threads;
            std::vector<BoundInput> inputs;
            for (const auto& run : cmd_colour(g, task))
                inputs.push_back(bound_input(g, run));
            emit_report(inputs);
            return 0;
        }
    } catch (const Error& e) {
        print_error(err, to_string(e.kind()), e.what());
        return 1;
    } catch (const std::exception& e) {
        print_error(err, "internal", e.what());
        return 1;
    }
    return 0;
}

} // namespace cfcolor::cli
