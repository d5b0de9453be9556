#pragma once

#include "negcf/coefficient_stream.hpp"
#include "negcf/extended_rational.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace negcf {

/// Walk in the Farey graph: ∞ followed by the convergents v_0, v_1, ...
struct FareyPath {
    std::vector<ExtendedRational> vertices;

    std::size_t edge_count() const noexcept { return vertices.empty() ? 0 : vertices.size() - 1; }
    bool operator==(const FareyPath&) const = default;
};

/// a/b ~ c/d iff ad - bc = ±1. Throws PreconditionViolated when u == v.
bool is_adjacent(const ExtendedRational& u, const ExtendedRational& v);

/// ∞ followed by the first n convergents. Throws StreamExhausted on a short
/// Finite stream.
FareyPath path_from_stream(const CoefficientStream& s, std::size_t n);

struct RevisitHistogram {
    /// Vertex counts in order of first appearance along the path.
    std::vector<std::pair<ExtendedRational, std::size_t>> counts;
    /// The two most visited vertices (ties go to the earlier first visit).
    std::vector<ExtendedRational> top;

    std::size_t count_of(const ExtendedRational& v) const;
    /// Number of distinct vertices visited at least `threshold` times.
    std::size_t vertices_with_at_least(std::size_t threshold) const;
};

RevisitHistogram revisit_histogram(const FareyPath& path);

struct Semicircle {
    ExtendedRational center;
    ExtendedRational radius;
    bool operator==(const Semicircle&) const = default;
};

struct VerticalRay {
    ExtendedRational x;
    bool operator==(const VerticalRay&) const = default;
};

using GeodesicArc = std::variant<Semicircle, VerticalRay>;

/// Hyperbolic line joining two boundary points of the upper half-plane.
/// Throws PreconditionViolated when u == v.
GeodesicArc geodesic(const ExtendedRational& u, const ExtendedRational& v);

struct Viewport {
    ExtendedRational xmin = -2;
    ExtendedRational xmax = 2;
    /// Height of the visible strip in plane units.
    ExtendedRational height = 2;
    int width_px = 800;
    int height_px = 400;
    bool labels = false;
    /// Levels of the Farey tessellation drawn behind the path (0 = none).
    int background_depth = 0;
};

/// SVG 1.1 document with one element of class "edge" per path edge, in path
/// order. Throws PreconditionViolated for a degenerate viewport.
std::string render_svg(const FareyPath& path, const Viewport& viewport);

/// {"vertices": [{"num": "...", "den": "..."}, ...]}
std::string path_to_json(const FareyPath& path);
/// Throws ParseError on malformed documents.
FareyPath path_from_json(const std::string& text);

}  // namespace negcf
