#pragma once

#include <vector>

#include "kakeya/vec2.hpp"

namespace kakeya {

using Polygon = std::vector<Vec2>;  // convex, counterclockwise

double polygon_area(const Polygon& p);

/// Clip a convex polygon against the half-plane { p : (p - a).dot(inward) >= 0 }.
Polygon clip_halfplane(const Polygon& poly, Vec2 a, Vec2 inward);

/// Intersection of two convex polygons (Sutherland-Hodgman).
Polygon convex_intersection(const Polygon& subject, const Polygon& clip);

}  // namespace kakeya
