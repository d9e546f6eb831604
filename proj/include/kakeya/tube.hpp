#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "kakeya/report.hpp"
#include "kakeya/vec2.hpp"

namespace kakeya {

// Tolerance for the floating-point separating-axis test: overlaps with
// penetration depth below this count as disjoint (the sets are open, so
// measure-zero touching is harmless).
inline constexpr double kGeomTol = 1e-9;

/// Oriented rectangle in the plane: the image of [0,len] x (-hw,hw) under
/// a rigid motion taking 0 to `origin` and e1 to `dir`.
struct OrientedRect {
    Vec2 origin;
    Vec2 dir;  // unit
    double len = 1.0;
    double hw = 0.0;  // half-width

    Vec2 corner(int i) const;  // 0..3, counterclockwise
    double area() const { return 2.0 * hw * len; }
    double perimeter() const { return 2.0 * (len + 2.0 * hw); }
    bool contains(Vec2 p, double tol = 0.0) const;
};

/// An oriented delta-tube in R^d: the image of [0,length] x B(0,delta) under a
/// rigid motion, oriented by `direction`. `origin` is the image of (0,0).
/// Base tubes have length 1; translate_tube produces length b-a.
struct Tube {
    int d = 2;
    std::vector<double> origin;
    std::vector<double> direction;  // unit
    double delta = 0.0;
    std::pair<double, double> window{2.0, 3.0};
    double length = 1.0;

    double measure() const;

    // d == 2 views
    Vec2 origin2() const { return {origin[0], origin[1]}; }
    Vec2 dir2() const { return {direction[0], direction[1]}; }
    OrientedRect rect() const;            // the tube itself
    OrientedRect translate_rect() const;  // the image of [a,b] x B(0,delta)
};

struct FamilyMeta {
    std::string name;
    std::uint64_t seed = 0;
    std::map<std::string, double> params;
};

/// A finite set of same-width tubes plus construction metadata.
struct TubeFamily {
    std::vector<Tube> tubes;
    double delta = 0.0;
    int d = 2;
    std::pair<double, double> window{2.0, 3.0};
    FamilyMeta meta;

    std::size_t size() const { return tubes.size(); }
    double sum_measures() const;
    void validate() const;  // throws invalid_argument on broken invariants
};

double unit_ball_volume(int dim);

Tube make_tube(int d, std::vector<double> origin, std::vector<double> direction, double delta,
               std::pair<double, double> window = {2.0, 3.0});

Tube translate_tube(const Tube& t);

/// True iff the interiors are disjoint. Exact (separating axis) in d = 2;
/// for d > 2 a conservative segment-distance certificate with Monte-Carlo
/// overlap sampling is used instead.
bool tubes_disjoint(const Tube& a, const Tube& b);

struct UnionMeasureResult {
    double value = 0.0;
    double error_bound = 0.0;
};

/// Rasterized Lebesgue measure of the union of the base tubes.
/// `resolution` is the raster cell size h; requires h < delta/4.
UnionMeasureResult union_measure(const TubeFamily& f, double resolution);

/// List of translate pairs that fail the disjointness certificate.
std::vector<std::pair<int, int>> disjointness_violations(const TubeFamily& f);

/// epsilon = |union R_j| / sum |R_j| with error estimate; an upper-bound
/// witness for the compression functional at this delta.
BoundReport compression_ratio(const TubeFamily& f, double resolution, bool enforce_disjoint);

/// Relaxed score (|union R_j|/sum|R_j|) * (sum_{i,j} |Rbar_i cap Rbar_j| / sum|R_j|);
/// the pairwise translate intersection areas are exact (rectangle clipping).
BoundReport relaxed_score(const TubeFamily& f, double resolution);

/// Exact area of the pairwise intersection of two oriented rectangles.
double rect_intersection_area(const OrientedRect& a, const OrientedRect& b);

/// Separating-axis disjointness for two oriented rectangles (tolerance tol).
bool rects_disjoint(const OrientedRect& a, const OrientedRect& b, double tol = kGeomTol);

}  // namespace kakeya
