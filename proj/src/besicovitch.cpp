#include "kakeya/besicovitch.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "kakeya/errors.hpp"

namespace kakeya {

namespace {

// Each group is tracked by its "heart": the alpha-scaled triangle base that
// the bisection lemma produces. A merge aligns the right heart next to the
// left one and overlaps the two by 2(1-alpha) heart-widths, with the
// harmonic schedule alpha_j = (k-j+2)/(k-j+3) from the DP recurrence that
// minimizes the union bound to 2/(k+2). Slides are monotone in the sliver
// index, so every pair's supporting-line crossing stays at height <= 1,
// below the (2,3) translate window.
struct Group {
    double heart_lo, heart_hi;  // the alpha-scaled triangle base the lemma tracks
    double hull_lo, hull_hi;    // full base extent (first sliver start, last sliver end)
};

// Consecutive slivers must always gain at least this much relative left-slide
// (in sliver widths). It keeps every pair's supporting-line crossing at height
// <= 1 - kMinIncrement, which the translate-disjointness certificate needs
// for quarter-width tubes at window (2,3).
constexpr double kMinIncrement = 0.36;

void build_offsets(int level, int begin, int count, double w, int k, std::vector<double>& offset,
                   Group& out) {
    if (count == 1) {
        out = {begin * w, (begin + 1) * w, begin * w, (begin + 1) * w};
        return;
    }
    Group left, right;
    build_offsets(level - 1, begin, count / 2, w, k, offset, left);
    build_offsets(level - 1, begin + count / 2, count / 2, w, k, offset, right);
    double alpha = static_cast<double>(k - level + 2) / static_cast<double>(k - level + 3);
    double hw = left.heart_hi - left.heart_lo;  // == right heart width
    double shift = (right.heart_lo - left.heart_hi) + 2.0 * (1.0 - alpha) * hw;
    shift = std::max(shift, (right.hull_lo - left.hull_hi) + kMinIncrement * w);
    for (int i = begin + count / 2; i < begin + count; ++i) offset[i] -= shift;
    out = {left.heart_lo, left.heart_lo + 2.0 * alpha * hw, left.hull_lo, right.hull_hi - shift};
}

// Axial repair: nudge tubes of offending pairs along their own axes by up to
// 4 delta until every translate pair passes the separating-axis certificate.
void repair_disjointness(TubeFamily& fam) {
    const double delta = fam.delta;
    for (int pass = 0; pass < 8; ++pass) {
        auto bad = disjointness_violations(fam);
        if (bad.empty()) return;
        bool moved = false;
        for (auto [i, j] : bad) {
            for (int which = 0; which < 2 && !moved; ++which) {
                int idx = which == 0 ? j : i;
                Tube& t = fam.tubes[idx];
                const std::vector<double> saved = t.origin;
                for (double s : {1.0, -1.0, 2.0, -2.0, 3.0, -3.0, 4.0, -4.0}) {
                    for (int c = 0; c < t.d; ++c) t.origin[c] = saved[c] + s * delta * t.direction[c];
                    bool clear = true;
                    OrientedRect tr = t.translate_rect();
                    for (std::size_t m = 0; m < fam.tubes.size(); ++m) {
                        if (static_cast<int>(m) == idx) continue;
                        if (!rects_disjoint(tr, fam.tubes[m].translate_rect())) {
                            clear = false;
                            break;
                        }
                    }
                    if (clear) {
                        moved = true;
                        break;
                    }
                    t.origin = saved;
                }
            }
            if (moved) break;  // re-run the certificate after each successful nudge
        }
        if (!moved) break;
    }
    auto bad = disjointness_violations(fam);
    if (!bad.empty()) {
        std::string msg = "keich_family: disjointness unattainable after repair; first pair (" +
                          std::to_string(bad.front().first) + "," +
                          std::to_string(bad.front().second) + "), " + std::to_string(bad.size()) +
                          " pair(s) total";
        throw ConstructionFailed(msg);
    }
}

}  // namespace

TubeFamily keich_family(int k, std::pair<double, double> window) {
    if (k < 2 || k > 14) throw std::invalid_argument("keich_family: k outside [2,14]");
    if (!(window.first < window.second)) throw std::invalid_argument("keich_family: bad window");
    const int n = 1 << k;
    const double w = std::pow(2.0, 1 - k);  // sliver base width; triangle base [0,2], apex (1,1)
    // Tube width as a fraction of the sliver: a quarter for the default
    // window; windows starting closer to the tube need thinner tubes to keep
    // the translates clear of the sibling crossings.
    const double frac = std::min(0.25, 0.25 * (window.first - 1.0));
    if (!(frac > 0.0)) throw std::invalid_argument("keich_family: window must start past 1");
    const double delta = frac * w;
    std::vector<double> offset(n, 0.0);
    Group hull{};
    build_offsets(k, 0, n, w, k, offset, hull);

    TubeFamily fam;
    fam.d = 2;
    fam.delta = delta;
    fam.window = window;
    fam.meta.name = "keich";
    fam.meta.params["k"] = k;
    fam.tubes.reserve(n);
    const Vec2 apex0{1.0, 1.0};
    for (int i = 0; i < n; ++i) {
        Vec2 mid{(i + 0.5) * w + offset[i], 0.0};
        Vec2 apex = apex0 + Vec2{offset[i], 0.0};
        Vec2 dir = (apex - mid).normalized();
        fam.tubes.push_back(
            make_tube(2, {mid.x, mid.y}, {dir.x, dir.y}, delta, window));
    }
    repair_disjointness(fam);
    return fam;
}

TubeFamily separated_direction_family(double delta) {
    if (!(delta > std::pow(2.0, -14) && delta <= 0.25))
        throw std::invalid_argument("separated_direction_family: delta outside (2^-14, 1/4)");
    // Maximal delta-separated angles in the +-45 degree sector (measured from
    // the vertical axis, matching the Perron layout's direction fan).
    const double phi0 = -0.25 * std::numbers::pi;
    const double phi1 = 0.25 * std::numbers::pi;
    std::vector<double> angles;
    for (double phi = phi0; phi <= phi1 + 1e-15; phi += delta) angles.push_back(phi);
    const int m = static_cast<int>(angles.size());

    int k = 2;
    while ((1 << k) < m && k < 14) ++k;
    const int n = 1 << k;
    const double w = 2.0 / n;
    std::vector<double> offset(n, 0.0);
    Group hull{};
    build_offsets(k, 0, n, w, k, offset, hull);

    TubeFamily fam;
    fam.d = 2;
    fam.delta = delta;
    fam.meta.name = "separated";
    fam.meta.params["delta"] = delta;
    fam.tubes.reserve(m);
    for (int i = 0; i < m; ++i) {
        Vec2 dir{std::sin(angles[i]), std::cos(angles[i])};
        // nearest sliver of the Perron layout: original direction angle of
        // sliver s is atan((1 - (s+1/2) w) / 1), decreasing in s
        double target = std::tan(angles[i]);
        double srealf = (1.0 - target) / w - 0.5;
        int s = std::clamp(static_cast<int>(std::lround(srealf)), 0, n - 1);
        Vec2 mid{(s + 0.5) * w + offset[s], 0.0};
        fam.tubes.push_back(make_tube(2, {mid.x, mid.y}, {dir.x, dir.y}, delta));
    }
    double total = fam.sum_measures();
    fam.meta.params["sum_measures"] = total;
    return fam;
}

TubeFamily optimize_family(int n, double delta, std::uint64_t seed, int iters,
                           const OptimizeOptions& opt) {
    if (n < 2) throw std::invalid_argument("optimize_family: n >= 2 required");
    if (iters < 1) throw std::invalid_argument("optimize_family: iters >= 1 required");
    if (!(delta > 0.0 && delta < 0.5)) throw std::invalid_argument("optimize_family: bad delta");

    TubeFamily fam;
    fam.d = 2;
    fam.delta = delta;
    fam.meta.name = "optimized";
    fam.meta.seed = seed;
    fam.meta.params["n"] = n;
    fam.meta.params["iters"] = iters;
    for (int i = 0; i < n; ++i)
        fam.tubes.push_back(make_tube(2, {i * 6.0 * delta, 0.0}, {0.0, 1.0}, delta));
    if (!disjointness_violations(fam).empty())
        throw ConstructionFailed("optimize_family: infeasible start");

    const double h = delta / opt.resolution_factor;
    auto score = [&](const TubeFamily& f) { return union_measure(f, h).value / f.sum_measures(); };

    double cur = score(fam);
    TubeFamily best = fam;
    double best_score = cur;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::normal_distribution<double> gauss;
    std::uniform_int_distribution<int> pick(0, n - 1);

    double temp = opt.t0;
    for (int it = 0; it < iters; ++it, temp *= opt.cooling) {
        int idx = pick(rng);
        Tube saved = fam.tubes[idx];
        Tube& t = fam.tubes[idx];
        if (unif(rng) < 0.5) {
            t.origin[0] += delta * gauss(rng);
            t.origin[1] += delta * gauss(rng);
        } else {
            Vec2 d = rotate(t.dir2(), delta * gauss(rng));
            t.direction = {d.x, d.y};
        }
        bool feasible = true;
        OrientedRect tr = t.translate_rect();
        for (int m = 0; m < n && feasible; ++m)
            if (m != idx && !rects_disjoint(tr, fam.tubes[m].translate_rect())) feasible = false;
        if (!feasible) {
            t = saved;
            continue;
        }
        double cand = score(fam);
        double d = cand - cur;
        if (d <= 0.0 || unif(rng) < std::exp(-d / temp)) {
            cur = cand;
            if (cur < best_score) {
                best_score = cur;
                best = fam;
            }
        } else {
            t = saved;
        }
    }
    best.meta.params["score"] = best_score;
    return best;
}

FCurve f_curve(const std::vector<int>& ks, CurveMode mode, const FCurveOptions& opt) {
    if (ks.empty()) throw std::invalid_argument("f_curve: empty k list");
    for (std::size_t i = 1; i < ks.size(); ++i)
        if (ks[i] <= ks[i - 1]) throw std::invalid_argument("f_curve: ks must be increasing");

    FCurve curve;
    curve.mode = mode == CurveMode::Keich      ? "keich"
                 : mode == CurveMode::Optimized ? "optimized"
                                                : "separated";
    for (int k : ks) {
        double delta = std::pow(2.0, -k);
        TubeFamily fam;
        switch (mode) {
            case CurveMode::Keich: fam = keich_family(k); break;
            case CurveMode::Optimized:
                fam = optimize_family(1 << k, delta, opt.seed, opt.optimizer_iters);
                break;
            case CurveMode::Separated: fam = separated_direction_family(delta); break;
        }
        double h = fam.delta / opt.resolution_factor;
        auto rep = compression_ratio(fam, h, /*enforce_disjoint=*/mode == CurveMode::Keich);
        FCurvePoint pt;
        pt.k = k;
        pt.delta = fam.delta;
        pt.epsilon = rep.value;
        pt.error_bound = rep.error_estimate;
        pt.certificate = rep.has_flag("CERTIFICATE_PASSED");
        curve.points.push_back(pt);
    }
    if (curve.points.size() >= 2) {
        double sxx = 0.0, sxy = 0.0;
        for (const auto& p : curve.points) {
            double x = 1.0 / std::abs(std::log(p.delta));
            sxx += x * x;
            sxy += x * p.epsilon;
        }
        curve.fit_C = sxy / sxx;
        curve.fit_done = true;
        for (const auto& p : curve.points) {
            double x = 1.0 / std::abs(std::log(p.delta));
            curve.residuals.push_back(std::abs(p.epsilon - curve.fit_C * x) / (curve.fit_C * x));
        }
    }
    return curve;
}

}  // namespace kakeya
