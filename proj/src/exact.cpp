#include "cfcolor/exact.hpp"

#include "cfcolor/error.hpp"

#include <algorithm>
#include <chrono>

namespace cfcolor {

namespace {

using Clock = std::chrono::steady_clock;

void check_request(const Graph& g, const Target& target)
{
    if (target.kind == TargetKind::pcf || target.kind == TargetKind::odd) {
        for (Vertex v = 0; v < g.vertex_count(); ++v)
            if (g.degree(v) == 0)
                throw Error(ErrorKind::precondition,
                            "vertex " + std::to_string(v) + " is isolated; " + to_string(target) + " is undefined");
    }
    if (target.kind == TargetKind::pcf) {
        const auto stats = degree_stats(g);
        if (target.h < 1 || (g.vertex_count() > 0 && target.h > stats.min_degree))
            throw Error(ErrorKind::precondition, "pcf needs 1 <= h <= min degree (h=" + std::to_string(target.h) +
                                                     ", min degree=" + std::to_string(stats.min_degree) + ")");
    }
}

// Backtracking over one connected component. Vertices are coloured in index
// order; a new colour may only be max-used + 1.
//
// For every vertex w we keep the multiplicity of each colour among its
// coloured neighbours, which gives O(1) properness and distance-2 tests and
// lets the unique/odd counts be updated incrementally.
class Search {
public:
    Search(const Graph& g, const Target& target, std::size_t k, std::optional<Clock::time_point> deadline)
        : g_(g), target_(target), k_(k), deadline_(deadline), n_(g.vertex_count()),
          colour_(n_, kUncoloured), count_((k + 1) * n_, 0), unique_(n_, 0), odd_(n_, 0), open_(n_, 0)
    {
        for (Vertex v = 0; v < n_; ++v)
            open_[v] = g.degree(v);
    }

    SolveStatus run()
    {
        if (n_ == 0)
            return SolveStatus::found;
        if (k_ == 0)
            return SolveStatus::none;
        const bool found = descend(0, 0);
        if (timed_out_)
            return SolveStatus::unknown;
        return found ? SolveStatus::found : SolveStatus::none;
    }

    const std::vector<Colour>& colours() const { return colour_; }
    std::uint64_t nodes() const { return nodes_; }

private:
    std::uint32_t& count(Vertex w, Colour c) { return count_[w * (k_ + 1) + c]; }

    bool admissible(Vertex u, Colour c)
    {
        if (count(u, c) != 0)
            return false;
        if (target_.kind == TargetKind::square) {
            for (Vertex w : g_.neighbours(u))
                if (count(w, c) != 0)
                    return false;
        }
        return true;
    }

    // Applies u := c and reports whether every neighbour whose outcome is now
    // decided (or provably doomed) still satisfies the target.
    bool place(Vertex u, Colour c)
    {
        colour_[u] = c;
        bool ok = true;
        for (Vertex w : g_.neighbours(u)) {
            auto& m = count(w, c);
            ++m;
            if (m == 1)
                ++unique_[w];
            else if (m == 2)
                --unique_[w];
            if (m % 2 == 1)
                ++odd_[w];
            else
                --odd_[w];
            --open_[w];
            if (target_.kind == TargetKind::pcf && unique_[w] + open_[w] < target_.h)
                ok = false;
            if (target_.kind == TargetKind::odd && open_[w] == 0 && odd_[w] == 0)
                ok = false;
        }
        return ok;
    }

    void unplace(Vertex u, Colour c)
    {
        for (Vertex w : g_.neighbours(u)) {
            auto& m = count(w, c);
            if (m == 1)
                --unique_[w];
            else if (m == 2)
                ++unique_[w];
            if (m % 2 == 1)
                --odd_[w];
            else
                ++odd_[w];
            --m;
            ++open_[w];
        }
        colour_[u] = kUncoloured;
    }

    bool out_of_time()
    {
        if (timed_out_)
            return true;
        if (deadline_ && (nodes_ & 0xfff) == 0 && Clock::now() > *deadline_)
            timed_out_ = true;
        return timed_out_;
    }

    bool descend(Vertex u, Colour max_used)
    {
        if (u == n_)
            return true;
        const Colour limit = static_cast<Colour>(std::min<std::size_t>(k_, std::size_t(max_used) + 1));
        for (Colour c = 1; c <= limit; ++c) {
            ++nodes_;
            if (out_of_time())
                return false;
            if (!admissible(u, c))
                continue;
            const bool ok = place(u, c);
            if (ok && descend(u + 1, std::max(max_used, c)))
                return true;
            unplace(u, c);
            if (timed_out_)
                return false;
        }
        return false;
    }

    const Graph& g_;
    Target target_;
    std::size_t k_;
    std::optional<Clock::time_point> deadline_;
    std::size_t n_;
    std::vector<Colour> colour_;
    std::vector<std::uint32_t> count_;
    std::vector<std::size_t> unique_;
    std::vector<std::size_t> odd_;
    std::vector<std::size_t> open_;
    std::uint64_t nodes_ = 0;
    bool timed_out_ = false;
};

SolveResult solve_with_deadline(const Graph& g, const Target& target, std::size_t k,
                                std::optional<Clock::time_point> deadline)
{
    check_request(g, target);
    SolveResult result;
    std::vector<Colour> merged(g.vertex_count(), kUncoloured);
    bool unknown = false;
    // Colour classes never interact across components.
    for (const auto& comp : components(g)) {
        const Graph sub = induced_subgraph(g, comp);
        Search search(sub, target, k, deadline);
        const auto status = search.run();
        result.nodes_explored += search.nodes();
        if (status == SolveStatus::none) {
            result.status = SolveStatus::none;
            return result;
        }
        if (status == SolveStatus::unknown) {
            unknown = true;
            continue;
        }
        for (std::size_t i = 0; i < comp.size(); ++i)
            merged[comp[i]] = search.colours()[i];
    }
    if (unknown) {
        result.status = SolveStatus::unknown;
        return result;
    }
    result.status = SolveStatus::found;
    result.colouring = PartialColouring::from_raw(std::move(merged));
    return result;
}

std::optional<Clock::time_point> deadline_from(const SolveOptions& options)
{
    if (!options.time_budget_secs)
        return std::nullopt;
    return Clock::now() + std::chrono::duration_cast<Clock::duration>(
                              std::chrono::duration<double>(*options.time_budget_secs));
}

bool satisfies(const Graph& g, std::span<const Colour> c, const Target& target)
{
    switch (target.kind) {
    case TargetKind::proper: return raw_is_proper(g, c);
    case TargetKind::pcf: return raw_is_h_conflict_free(g, c, target.h);
    case TargetKind::odd: return raw_is_odd(g, c);
    case TargetKind::square: return raw_is_square(g, c);
    }
    return false;
}

} // namespace

std::string to_string(const Target& target)
{
    switch (target.kind) {
    case TargetKind::proper: return "proper";
    case TargetKind::pcf: return "pcf_h(" + std::to_string(target.h) + ")";
    case TargetKind::odd: return "odd";
    case TargetKind::square: return "square";
    }
    return "unknown";
}

std::optional<TargetKind> parse_target_kind(std::string_view name)
{
    if (name == "proper" || name == "chi")
        return TargetKind::proper;
    if (name == "pcf")
        return TargetKind::pcf;
    if (name == "odd")
        return TargetKind::odd;
    if (name == "square")
        return TargetKind::square;
    return std::nullopt;
}

std::string_view to_string(SolveStatus status)
{
    switch (status) {
    case SolveStatus::found: return "found";
    case SolveStatus::none: return "none";
    case SolveStatus::unknown: return "unknown";
    }
    return "unknown";
}

std::string_view to_string(ValueStatus status)
{
    switch (status) {
    case ValueStatus::exact: return "exact";
    case ValueStatus::exceeds: return "exceeds";
    case ValueStatus::unknown: return "unknown";
    }
    return "unknown";
}

SolveResult find_colouring(const Graph& g, const Target& target, std::size_t k, const SolveOptions& options)
{
    return solve_with_deadline(g, target, k, deadline_from(options));
}

ChromaticResult chromatic_value(const Graph& g, const Target& target, std::size_t k_max, const SolveOptions& options)
{
    if (k_max < 1)
        throw Error(ErrorKind::invalid_input, "k_max must be at least 1");
    check_request(g, target);
    const auto deadline = deadline_from(options);
    ChromaticResult result;
    result.lower = g.vertex_count() == 0 ? 0 : 1;
    for (std::size_t k = result.lower; k <= k_max; ++k) {
        auto attempt = solve_with_deadline(g, target, k, deadline);
        result.nodes_explored += attempt.nodes_explored;
        if (attempt.status == SolveStatus::unknown) {
            result.status = ValueStatus::unknown;
            result.lower = k;
            return result;
        }
        if (attempt.status == SolveStatus::found) {
            result.status = ValueStatus::exact;
            result.value = result.lower = result.upper = k;
            result.witness = std::move(attempt.colouring);
            return result;
        }
        result.lower = k + 1;
    }
    result.status = ValueStatus::exceeds;
    return result;
}

bool enumeration_oracle(const Graph& g, const Target& target, std::size_t k)
{
    const std::size_t n = g.vertex_count();
    double space = 1.0;
    for (std::size_t i = 0; i < n; ++i)
        space *= static_cast<double>(k);
    if (space > 1e8)
        throw Error(ErrorKind::precondition, "enumeration space k^n exceeds 10^8");
    if (n == 0)
        return true;
    if (k == 0)
        return false;
    std::vector<Colour> c(n, 1);
    while (true) {
        if (satisfies(g, c, target))
            return true;
        std::size_t i = 0;
        while (i < n && c[i] == k) {
            c[i] = 1;
            ++i;
        }
        if (i == n)
            return false;
        ++c[i];
    }
}

} // namespace cfcolor
