#include "kakeya/polygon.hpp"

#include <cmath>

namespace kakeya {

double polygon_area(const Polygon& p) {
    if (p.size() < 3) return 0.0;
    double twice = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        Vec2 a = p[i], b = p[(i + 1) % p.size()];
        twice += a.cross(b);
    }
    return 0.5 * std::abs(twice);
}

Polygon clip_halfplane(const Polygon& poly, Vec2 a, Vec2 inward) {
    Polygon out;
    out.reserve(poly.size() + 1);
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        Vec2 p = poly[i], q = poly[(i + 1) % n];
        double dp = (p - a).dot(inward);
        double dq = (q - a).dot(inward);
        if (dp >= 0.0) out.push_back(p);
        if ((dp > 0.0 && dq < 0.0) || (dp < 0.0 && dq > 0.0)) {
            double t = dp / (dp - dq);
            out.push_back(p + (q - p) * t);
        }
    }
    return out;
}

Polygon convex_intersection(const Polygon& subject, const Polygon& clip) {
    Polygon cur = subject;
    const std::size_t n = clip.size();
    for (std::size_t i = 0; i < n && !cur.empty(); ++i) {
        Vec2 a = clip[i], b = clip[(i + 1) % n];
        Vec2 inward = (b - a).perp();  // clip polygon is counterclockwise
        cur = clip_halfplane(cur, a, inward);
    }
    return cur;
}

}  // namespace kakeya
