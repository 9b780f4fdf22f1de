#pragma once

#include "cfcolor/graph.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace cfcolor {

// Colours are positive integers; 0 is the "uncoloured" sentinel in raw views.
using Colour = std::uint32_t;
inline constexpr Colour kUncoloured = 0;

class PartialColouring {
public:
    PartialColouring() = default;
    explicit PartialColouring(std::size_t n) : colour_(n, kUncoloured) {}

    // Raw vector, 0 meaning uncoloured.
    static PartialColouring from_raw(std::vector<Colour> raw);

    std::size_t size() const noexcept { return colour_.size(); }

    std::optional<Colour> get(Vertex v) const
    {
        return colour_.at(v) == kUncoloured ? std::nullopt : std::optional<Colour>(colour_[v]);
    }
    bool is_coloured(Vertex v) const { return colour_.at(v) != kUncoloured; }

    void assign(Vertex v, Colour c);
    void clear(Vertex v);

    std::size_t coloured_count() const noexcept { return coloured_; }
    bool is_total() const noexcept { return coloured_ == colour_.size(); }

    // Distinct colours currently assigned, ascending.
    std::vector<Colour> palette() const;
    std::size_t colours_used() const noexcept { return palette_.size(); }
    // Number of vertices holding colour c.
    std::size_t class_size(Colour c) const;

    std::span<const Colour> raw() const noexcept { return colour_; }

    bool operator==(const PartialColouring& other) const { return colour_ == other.colour_; }

private:
    std::vector<Colour> colour_;
    std::map<Colour, std::size_t> palette_;
    std::size_t coloured_ = 0;
};

struct ProperCheck {
    bool proper = true;
    std::vector<Edge> violations;
};

// Edges (u < v) whose endpoints carry the same colour. Uncoloured vertices
// never violate.
ProperCheck is_proper(const Graph& g, const PartialColouring& c);

// Colours carried by exactly one neighbour of v.
std::size_t unique_colour_count(const Graph& g, const PartialColouring& c, Vertex v);

struct VerificationReport {
    bool proper = true;
    std::vector<Edge> violations;
    bool total = false;
    std::vector<std::size_t> unique_counts;
    std::vector<bool> odd_ok;
    std::size_t h = 0;
    // proper, total, and every vertex has at least h unique neighbour colours.
    bool h_cf_ok = false;
    // proper, total, and every vertex sees some colour an odd number of times.
    bool odd_all_ok = false;
    std::size_t colours_used = 0;
};

// Throws Error(precondition) if g has an isolated vertex.
VerificationReport verify_h_conflict_free(const Graph& g, const PartialColouring& c, std::size_t h);
VerificationReport verify_odd(const Graph& g, const PartialColouring& c);

// Proper and distinct on every pair of vertices with a common neighbour.
// Partial colourings are never square colourings.
bool verify_square(const Graph& g, const PartialColouring& c);

// Allocation-light predicates on raw total colourings (0 = uncoloured). These
// sit on the hot path of exhaustive enumeration.
bool raw_is_proper(const Graph& g, std::span<const Colour> c);
bool raw_is_h_conflict_free(const Graph& g, std::span<const Colour> c, std::size_t h);
bool raw_is_odd(const Graph& g, std::span<const Colour> c);
bool raw_is_square(const Graph& g, std::span<const Colour> c);

// "vertex colour" per line, 0-indexed, colours >= 1, '#' comments; vertices
// not listed stay uncoloured.
PartialColouring read_colouring(std::istream& in, std::size_t n);
void write_colouring(std::ostream& out, const PartialColouring& c);

} // namespace cfcolor
