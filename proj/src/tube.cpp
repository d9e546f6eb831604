#include "kakeya/tube.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "kakeya/errors.hpp"
#include "kakeya/polygon.hpp"
#include "kakeya/raster.hpp"

namespace kakeya {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

// distance between the segments o1 + [0,l1] u1 and o2 + [0,l2] u2 in R^d,
// by projected-gradient descent on the (convex) squared distance.
double segment_distance(const std::vector<double>& o1, const std::vector<double>& u1, double l1,
                        const std::vector<double>& o2, const std::vector<double>& u2, double l2) {
    const std::size_t d = o1.size();
    std::vector<double> w(d);
    for (std::size_t i = 0; i < d; ++i) w[i] = o1[i] - o2[i];
    double a = 1.0, b = dot(u1, u2), c = 1.0;
    double e = dot(w, u1), f = dot(w, u2);
    double s = 0.0, t = 0.0;
    // alternate the two 1-d minimizations; converges fast for this bilinear form
    for (int it = 0; it < 64; ++it) {
        double s_new = std::clamp((b * t - e) / a, 0.0, l1);
        double t_new = std::clamp((b * s_new + f) / c, 0.0, l2);
        if (std::abs(s_new - s) + std::abs(t_new - t) < 1e-14 * (1.0 + l1 + l2)) {
            s = s_new;
            t = t_new;
            break;
        }
        s = s_new;
        t = t_new;
    }
    double d2 = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        double diff = w[i] + s * u1[i] - t * u2[i];
        d2 += diff * diff;
    }
    return std::sqrt(d2);
}

bool point_in_tube(const std::vector<double>& p, const Tube& t) {
    const std::size_t d = p.size();
    double axis = 0.0;
    for (std::size_t i = 0; i < d; ++i) axis += (p[i] - t.origin[i]) * t.direction[i];
    if (axis < 0.0 || axis > t.length) return false;
    double perp2 = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        double w = p[i] - t.origin[i] - axis * t.direction[i];
        perp2 += w * w;
    }
    return perp2 < t.delta * t.delta;
}

}  // namespace

double unit_ball_volume(int dim) {
    if (dim < 0) throw std::invalid_argument("unit_ball_volume: negative dimension");
    // pi^{dim/2} / Gamma(dim/2 + 1)
    return std::pow(std::numbers::pi, 0.5 * dim) / std::tgamma(0.5 * dim + 1.0);
}

Vec2 OrientedRect::corner(int i) const {
    Vec2 w = dir.perp();
    switch (i & 3) {
        case 0: return origin - w * hw;
        case 1: return origin + dir * len - w * hw;
        case 2: return origin + dir * len + w * hw;
        default: return origin + w * hw;
    }
}

bool OrientedRect::contains(Vec2 p, double tol) const {
    Vec2 rel = p - origin;
    double t = rel.dot(dir);
    if (t < -tol || t > len + tol) return false;
    return std::abs(rel.dot(dir.perp())) <= hw + tol;
}

double Tube::measure() const { return unit_ball_volume(d - 1) * std::pow(delta, d - 1) * length; }

OrientedRect Tube::rect() const { return {origin2(), dir2(), length, delta}; }

OrientedRect Tube::translate_rect() const {
    return {origin2() + dir2() * window.first, dir2(), window.second - window.first, delta};
}

double TubeFamily::sum_measures() const {
    double s = 0.0;
    for (const auto& t : tubes) s += t.measure();
    return s;
}

void TubeFamily::validate() const {
    if (tubes.empty()) throw std::invalid_argument("TubeFamily: empty");
    for (const auto& t : tubes) {
        if (t.d != d || t.delta != delta || t.window != window)
            throw std::invalid_argument("TubeFamily: mixed delta/dimension/window");
        if (std::abs(norm(t.direction) - 1.0) > 1e-12)
            throw std::invalid_argument("TubeFamily: non-unit direction");
    }
}

Tube make_tube(int d, std::vector<double> origin, std::vector<double> direction, double delta,
               std::pair<double, double> window) {
    if (d < 2) throw std::invalid_argument("make_tube: dimension must be >= 2");
    if (origin.size() != static_cast<std::size_t>(d) || direction.size() != static_cast<std::size_t>(d))
        throw std::invalid_argument("make_tube: origin/direction size mismatch");
    double n = norm(direction);
    if (!(n > 0.0) || !std::isfinite(n)) throw std::invalid_argument("make_tube: zero direction");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("make_tube: delta outside (0,1)");
    if (!(window.first < window.second)) throw std::invalid_argument("make_tube: window a >= b");
    for (auto& x : direction) x /= n;
    Tube t;
    t.d = d;
    t.origin = std::move(origin);
    t.direction = std::move(direction);
    t.delta = delta;
    t.window = window;
    t.length = 1.0;
    return t;
}

Tube translate_tube(const Tube& t) {
    Tube out = t;
    for (int i = 0; i < t.d; ++i) out.origin[i] = t.origin[i] + t.window.first * t.direction[i];
    out.length = t.window.second - t.window.first;
    return out;
}

bool rects_disjoint(const OrientedRect& a, const OrientedRect& b, double tol) {
    const Vec2 axes[4] = {a.dir, a.dir.perp(), b.dir, b.dir.perp()};
    for (const Vec2& ax : axes) {
        double amin = 1e300, amax = -1e300, bmin = 1e300, bmax = -1e300;
        for (int i = 0; i < 4; ++i) {
            double pa = a.corner(i).dot(ax), pb = b.corner(i).dot(ax);
            amin = std::min(amin, pa);
            amax = std::max(amax, pa);
            bmin = std::min(bmin, pb);
            bmax = std::max(bmax, pb);
        }
        if (std::min(amax, bmax) - std::max(amin, bmin) <= tol) return true;
    }
    return false;
}

bool tubes_disjoint(const Tube& a, const Tube& b) {
    if (a.d != b.d) throw std::invalid_argument("tubes_disjoint: mixed dimensions");
    if (a.d == 2) return rects_disjoint(a.rect(), b.rect());
    // d > 2: sampled path. Segment distance >= delta_a + delta_b certifies
    // disjointness; otherwise probe one tube for points of the other.
    double sd = segment_distance(a.origin, a.direction, a.length, b.origin, b.direction, b.length);
    if (sd >= a.delta + b.delta - kGeomTol) return true;
    std::mt19937_64 rng(0x5eedu);
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const int d = a.d;
    std::vector<double> p(d), w(d);
    for (int trial = 0; trial < 20000; ++trial) {
        double t = unif(rng) * a.length;
        // uniform point of the cross-section ball via normalized gaussian
        double n2 = 0.0;
        for (int i = 0; i < d; ++i) {
            w[i] = gauss(rng);
            n2 += w[i] * w[i];
        }
        double axial = dot(w, a.direction);
        n2 -= axial * axial;
        for (int i = 0; i < d; ++i) w[i] -= axial * a.direction[i];
        double r = a.delta * std::pow(unif(rng), 1.0 / (d - 1)) / std::sqrt(std::max(n2, 1e-300));
        for (int i = 0; i < d; ++i) p[i] = a.origin[i] + t * a.direction[i] + r * w[i];
        if (point_in_tube(p, b)) return false;
    }
    return true;
}

UnionMeasureResult union_measure(const TubeFamily& f, double resolution) {
    f.validate();
    if (f.d == 2) {
        if (!(resolution > 0.0) || resolution >= f.delta / 4.0)
            throw ResolutionTooCoarse("union_measure: need h < delta/4");
        Vec2 lo{1e300, 1e300}, hi{-1e300, -1e300};
        double perimeter = 0.0;
        for (const auto& t : f.tubes) {
            OrientedRect r = t.rect();
            perimeter += r.perimeter();
            for (int i = 0; i < 4; ++i) {
                Vec2 c = r.corner(i);
                lo.x = std::min(lo.x, c.x);
                lo.y = std::min(lo.y, c.y);
                hi.x = std::max(hi.x, c.x);
                hi.y = std::max(hi.y, c.y);
            }
        }
        Vec2 pad{2.0 * resolution, 2.0 * resolution};
        RasterGrid grid(lo - pad, hi + pad, resolution);
        for (const auto& t : f.tubes) grid.fill_rect(t.rect());
        return {grid.covered_area(), resolution * perimeter};
    }
    // d > 2: Monte-Carlo over the bounding box, reported standard error.
    const int d = f.d;
    std::vector<double> lo(d, 1e300), hi(d, -1e300);
    for (const auto& t : f.tubes) {
        for (int i = 0; i < d; ++i) {
            double a = t.origin[i], b = t.origin[i] + t.length * t.direction[i];
            lo[i] = std::min(lo[i], std::min(a, b) - t.delta);
            hi[i] = std::max(hi[i], std::max(a, b) + t.delta);
        }
    }
    double vol = 1.0;
    for (int i = 0; i < d; ++i) vol *= hi[i] - lo[i];
    std::mt19937_64 rng(0xC0FFEEu);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const std::size_t samples = 200000;
    std::size_t hits = 0;
    std::vector<double> p(d);
    for (std::size_t s = 0; s < samples; ++s) {
        for (int i = 0; i < d; ++i) p[i] = lo[i] + (hi[i] - lo[i]) * unif(rng);
        for (const auto& t : f.tubes)
            if (point_in_tube(p, t)) {
                ++hits;
                break;
            }
    }
    double frac = static_cast<double>(hits) / static_cast<double>(samples);
    double se = vol * std::sqrt(std::max(frac * (1.0 - frac), 1.0 / samples) / samples);
    return {vol * frac, 3.0 * se};
}

std::vector<std::pair<int, int>> disjointness_violations(const TubeFamily& f) {
    std::vector<std::pair<int, int>> bad;
    const int n = static_cast<int>(f.tubes.size());
    if (f.d == 2) {
        std::vector<OrientedRect> rects(n);
        for (int i = 0; i < n; ++i) rects[i] = f.tubes[i].translate_rect();
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (!rects_disjoint(rects[i], rects[j])) bad.emplace_back(i, j);
        return bad;
    }
    std::vector<Tube> bars(n);
    for (int i = 0; i < n; ++i) bars[i] = translate_tube(f.tubes[i]);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!tubes_disjoint(bars[i], bars[j])) bad.emplace_back(i, j);
    return bad;
}

BoundReport compression_ratio(const TubeFamily& f, double resolution, bool enforce_disjoint) {
    f.validate();
    auto bad = disjointness_violations(f);
    if (enforce_disjoint && !bad.empty()) {
        std::string msg = "compression_ratio: translate disjointness violated by " +
                          std::to_string(bad.size()) + " pair(s)";
        throw ConstraintViolation(msg, bad);
    }
    auto um = union_measure(f, resolution);
    double total = f.sum_measures();
    BoundReport r;
    r.name = "compression_ratio";
    r.value = um.value / total;
    r.error_estimate = um.error_bound / total;
    r.set_param("delta", f.delta);
    r.set_param("n_tubes", static_cast<double>(f.size()));
    r.set_param("resolution", resolution);
    r.set_param("union_measure", um.value);
    r.set_param("sum_measures", total);
    r.provenance = {"raster-union/sum-of-measures", "error=perimeter*h"};
    r.flags.push_back(bad.empty() ? "CERTIFICATE_PASSED" : "CERTIFICATE_FAILED");
    return r;
}

double rect_intersection_area(const OrientedRect& a, const OrientedRect& b) {
    Polygon pa = {a.corner(0), a.corner(1), a.corner(2), a.corner(3)};
    Polygon pb = {b.corner(0), b.corner(1), b.corner(2), b.corner(3)};
    return polygon_area(convex_intersection(pa, pb));
}

BoundReport relaxed_score(const TubeFamily& f, double resolution) {
    f.validate();
    if (f.d != 2) throw std::invalid_argument("relaxed_score: d = 2 only");
    auto um = union_measure(f, resolution);
    double total = f.sum_measures();
    const int n = static_cast<int>(f.tubes.size());
    std::vector<OrientedRect> bars(n);
    for (int i = 0; i < n; ++i) bars[i] = f.tubes[i].translate_rect();
    double overlap = 0.0;
    for (int i = 0; i < n; ++i) {
        overlap += bars[i].area();  // diagonal term
        for (int j = i + 1; j < n; ++j) overlap += 2.0 * rect_intersection_area(bars[i], bars[j]);
    }
    double first = um.value / total;
    double second = overlap / total;
    BoundReport r;
    r.name = "relaxed_score";
    r.value = first * second;
    r.error_estimate = (um.error_bound / total) * second;
    r.set_param("delta", f.delta);
    r.set_param("n_tubes", static_cast<double>(n));
    r.set_param("union_ratio", first);
    r.set_param("overlap_ratio", second);
    r.set_param("resolution", resolution);
    r.provenance = {"raster-union/sum", "pairwise-clip-overlap/sum", "product"};
    return r;
}

}  // namespace kakeya
