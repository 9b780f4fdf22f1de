#include "cfcolor/colouring.hpp"

#include "cfcolor/error.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace cfcolor {

PartialColouring PartialColouring::from_raw(std::vector<Colour> raw)
{
    PartialColouring c(raw.size());
    for (std::size_t v = 0; v < raw.size(); ++v)
        if (raw[v] != kUncoloured)
            c.assign(static_cast<Vertex>(v), raw[v]);
    return c;
}

void PartialColouring::assign(Vertex v, Colour c)
{
    if (c == kUncoloured)
        throw Error(ErrorKind::invalid_input, "colours must be positive");
    clear(v);
    colour_[v] = c;
    ++palette_[c];
    ++coloured_;
}

void PartialColouring::clear(Vertex v)
{
    Colour& slot = colour_.at(v);
    if (slot == kUncoloured)
        return;
    auto it = palette_.find(slot);
    if (--it->second == 0)
        palette_.erase(it);
    slot = kUncoloured;
    --coloured_;
}

std::vector<Colour> PartialColouring::palette() const
{
    std::vector<Colour> out;
    out.reserve(palette_.size());
    for (const auto& [c, count] : palette_)
        out.push_back(c);
    return out;
}

std::size_t PartialColouring::class_size(Colour c) const
{
    auto it = palette_.find(c);
    return it == palette_.end() ? 0 : it->second;
}

ProperCheck is_proper(const Graph& g, const PartialColouring& c)
{
    ProperCheck check;
    for (auto [u, v] : g.edges()) {
        if (c.raw()[u] != kUncoloured && c.raw()[u] == c.raw()[v])
            check.violations.emplace_back(u, v);
    }
    check.proper = check.violations.empty();
    return check;
}

namespace {

// Sorted colours of the coloured neighbours of v.
void neighbour_colours(const Graph& g, std::span<const Colour> c, Vertex v, std::vector<Colour>& out)
{
    out.clear();
    for (Vertex w : g.neighbours(v))
        if (c[w] != kUncoloured)
            out.push_back(c[w]);
    std::sort(out.begin(), out.end());
}

std::size_t count_singletons(const std::vector<Colour>& sorted)
{
    std::size_t unique = 0;
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i])
            ++j;
        unique += (j - i == 1);
        i = j;
    }
    return unique;
}

bool has_odd_class(const std::vector<Colour>& sorted)
{
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i])
            ++j;
        if ((j - i) % 2 == 1)
            return true;
        i = j;
    }
    return false;
}

void require_no_isolated(const Graph& g)
{
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (g.degree(v) == 0)
            throw Error(ErrorKind::precondition,
                        "vertex " + std::to_string(v) + " is isolated; conflict-free and odd colourings are undefined");
}

VerificationReport base_report(const Graph& g, const PartialColouring& c)
{
    if (c.size() != g.vertex_count())
        throw Error(ErrorKind::invalid_input, "colouring size does not match vertex count");
    require_no_isolated(g);
    VerificationReport report;
    auto proper = is_proper(g, c);
    report.proper = proper.proper;
    report.violations = std::move(proper.violations);
    report.total = c.is_total();
    report.colours_used = c.colours_used();
    const std::size_t n = g.vertex_count();
    report.unique_counts.resize(n);
    report.odd_ok.resize(n);
    std::vector<Colour> scratch;
    for (Vertex v = 0; v < n; ++v) {
        neighbour_colours(g, c.raw(), v, scratch);
        report.unique_counts[v] = count_singletons(scratch);
        report.odd_ok[v] = has_odd_class(scratch);
    }
    return report;
}

} // namespace

std::size_t unique_colour_count(const Graph& g, const PartialColouring& c, Vertex v)
{
    if (v >= g.vertex_count())
        throw Error(ErrorKind::out_of_range, "vertex " + std::to_string(v) + " out of range");
    std::vector<Colour> scratch;
    neighbour_colours(g, c.raw(), v, scratch);
    return count_singletons(scratch);
}

VerificationReport verify_h_conflict_free(const Graph& g, const PartialColouring& c, std::size_t h)
{
    auto report = base_report(g, c);
    report.h = h;
    const bool enough = std::all_of(report.unique_counts.begin(), report.unique_counts.end(),
                                    [h](std::size_t count) { return count >= h; });
    report.h_cf_ok = report.proper && report.total && enough;
    report.odd_all_ok = report.proper && report.total &&
                        std::all_of(report.odd_ok.begin(), report.odd_ok.end(), [](bool ok) { return ok; });
    return report;
}

VerificationReport verify_odd(const Graph& g, const PartialColouring& c)
{
    return verify_h_conflict_free(g, c, 1);
}

bool verify_square(const Graph& g, const PartialColouring& c)
{
    if (c.size() != g.vertex_count() || !c.is_total())
        return false;
    return raw_is_square(g, c.raw());
}

bool raw_is_proper(const Graph& g, std::span<const Colour> c)
{
    for (Vertex u = 0; u < g.vertex_count(); ++u)
        for (Vertex w : g.neighbours(u))
            if (w > u && c[u] == c[w] && c[u] != kUncoloured)
                return false;
    return true;
}

bool raw_is_h_conflict_free(const Graph& g, std::span<const Colour> c, std::size_t h)
{
    if (!raw_is_proper(g, c))
        return false;
    std::vector<Colour> scratch;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (c[v] == kUncoloured)
            return false;
        neighbour_colours(g, c, v, scratch);
        if (count_singletons(scratch) < h)
            return false;
    }
    return true;
}

bool raw_is_odd(const Graph& g, std::span<const Colour> c)
{
    if (!raw_is_proper(g, c))
        return false;
    std::vector<Colour> scratch;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (c[v] == kUncoloured)
            return false;
        neighbour_colours(g, c, v, scratch);
        if (!has_odd_class(scratch))
            return false;
    }
    return true;
}

bool raw_is_square(const Graph& g, std::span<const Colour> c)
{
    if (!raw_is_proper(g, c))
        return false;
    std::vector<Colour> scratch;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (c[v] == kUncoloured)
            return false;
        neighbour_colours(g, c, v, scratch);
        if (std::adjacent_find(scratch.begin(), scratch.end()) != scratch.end())
            return false;
    }
    return true;
}

PartialColouring read_colouring(std::istream& in, std::size_t n)
{
    PartialColouring c(n);
    std::string line;
    for (std::size_t ln = 1; std::getline(in, line); ++ln) {
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.resize(hash);
        std::istringstream fields(line);
        std::int64_t v = 0;
        std::int64_t colour = 0;
        if (!(fields >> v)) {
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                throw Error(ErrorKind::parse, "line " + std::to_string(ln) + ": expected 'vertex colour'");
            continue;
        }
        std::string rest;
        if (!(fields >> colour) || (fields >> rest))
            throw Error(ErrorKind::parse, "line " + std::to_string(ln) + ": expected 'vertex colour'");
        if (v < 0 || static_cast<std::uint64_t>(v) >= n)
            throw Error(ErrorKind::parse, "line " + std::to_string(ln) + ": vertex out of range");
        if (colour < 1 || colour > 0xffffffffLL)
            throw Error(ErrorKind::parse, "line " + std::to_string(ln) + ": colours must be >= 1");
        c.assign(static_cast<Vertex>(v), static_cast<Colour>(colour));
    }
    return c;
}

void write_colouring(std::ostream& out, const PartialColouring& c)
{
    for (Vertex v = 0; v < c.size(); ++v)
        if (c.is_coloured(v))
            out << v << ' ' << c.raw()[v] << '\n';
}

} // namespace cfcolor
