#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "kakeya/besicovitch.hpp"
#include "kakeya/errors.hpp"
#include "kakeya/multiplier.hpp"

using namespace kakeya;
using namespace kakeya::multiplier;

namespace {

GridField2D gaussian_field(double extent, std::size_t n, Vec2 center, double s) {
    auto f = GridField2D::zeros(extent, n, {center.x - extent / 2, center.y - extent / 2});
    for (std::size_t iy = 0; iy < n; ++iy)
        for (std::size_t ix = 0; ix < n; ++ix) {
            Vec2 x = f.world(ix, iy) - center;
            f.at(ix, iy) = std::exp(-M_PI * x.norm2() / (s * s));
        }
    return f;
}

const auto kBall = [](double s) { return s <= 1.0 ? 1.0 : 0.0; };

}  // namespace

TEST_CASE("apply_multiplier identity and Parseval") {
    auto f = gaussian_field(16.0, 128, {0, 0}, 1.0);
    auto out = apply_multiplier(f, [](Vec2) { return std::complex<double>(1.0, 0.0); });
    double scale = f.norm_p(std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < f.values.size(); ++i)
        CHECK(std::abs(out.values[i] - f.values[i]) <= 1e-12 * scale);

    // ||Tf||_2 <= ||m||_inf ||f||_2 with m bounded by 0.7
    auto damp = apply_multiplier(f, [](Vec2 xi) {
        return std::complex<double>(0.7 * std::cos(xi.x), 0.0);
    });
    CHECK(damp.norm_p(2.0) <= 0.7 * f.norm_p(2.0) * (1.0 + 1e-9));
}

TEST_CASE("apply_multiplier translation symbol") {
    const double extent = 16.0;
    const std::size_t n = 128;
    auto f = gaussian_field(extent, n, {0, 0}, 1.0);
    Vec2 shift{extent / n * 8, 0.0};  // 8 cells
    auto out = apply_multiplier(f, [shift](Vec2 xi) {
        double phase = -2.0 * M_PI * shift.dot(xi);
        return std::exp(std::complex<double>(0.0, phase));
    });
    for (std::size_t iy = 0; iy < n; ++iy)
        for (std::size_t ix = 8; ix < n; ++ix)
            CHECK(std::abs(out.at(ix, iy) - f.at(ix - 8, iy)) < 1e-10);
}

TEST_CASE("apply_multiplier radial gaussian closed form") {
    const double extent = 32.0;
    const std::size_t n = 256;
    const double s = 1.2, a = 0.8;
    auto f = gaussian_field(extent, n, {0, 0}, s);
    // symbol exp(-pi a^2 |xi|^2) convolves to a gaussian of width sqrt(s^2+a^2)
    auto out = apply_multiplier(f, [a](Vec2 xi) {
        return std::complex<double>(std::exp(-M_PI * a * a * xi.norm2()), 0.0);
    });
    double s2 = s * s + a * a;
    for (std::size_t iy = 0; iy < n; iy += 7)
        for (std::size_t ix = 0; ix < n; ix += 7) {
            Vec2 x = out.world(ix, iy);
            double expected = s * s / s2 * std::exp(-M_PI * x.norm2() / s2);
            CHECK(std::abs(out.at(ix, iy).real() - expected) < 1e-9);
            CHECK(std::abs(out.at(ix, iy).imag()) < 1e-12);
        }
}

TEST_CASE("apply_multiplier rejects NaN symbols") {
    auto f = gaussian_field(8.0, 64, {0, 0}, 1.0);
    CHECK_THROWS_AS(
        apply_multiplier(f, [](Vec2) { return std::complex<double>(std::nan(""), 0.0); }),
        std::invalid_argument);
}

TEST_CASE("build_test_functions support and norms") {
    TubeFamily fam;
    fam.d = 2;
    fam.delta = 0.2;
    fam.tubes.push_back(make_tube(2, {0.0, 0.0}, {0.2, 1.0}, 0.2));
    auto profiles = default_profiles();
    GridSpec gs = default_grid_spec(fam, 1024);
    auto pairs = build_test_functions(fam, 4.0 / 3.0, profiles, gs);
    REQUIRE(pairs.size() == 1);

    // mass containment in the tube
    const Tube& t = fam.tubes[0];
    OrientedRect rect = t.rect();
    double inside = 0.0, total = 0.0;
    for (std::size_t iy = 0; iy < gs.n; ++iy)
        for (std::size_t ix = 0; ix < gs.n; ++ix) {
            double mass = std::norm(pairs[0].fj.at(ix, iy));
            total += mass;
            if (rect.contains(pairs[0].fj.world(ix, iy), 1e-12)) inside += mass;
        }
    CHECK(inside >= (1.0 - 1e-6) * total);

    // ||f_j||_p = ||f||_p ||rho||_p and ||g_j||_q = ||g||_q ||rho||_q
    double p = 4.0 / 3.0, q = 4.0;
    CHECK(pairs[0].fj.norm_p(p) ==
          doctest::Approx(profiles.norm_f(p) * profiles.norm_rho(p)).epsilon(1e-3));
    CHECK(pairs[0].gj.norm_p(q) ==
          doctest::Approx(profiles.norm_g(q) * profiles.norm_rho(q)).epsilon(1e-3));
}

TEST_CASE("build_test_functions domain guard") {
    TubeFamily fam;
    fam.d = 2;
    fam.delta = 0.1;
    fam.tubes.push_back(make_tube(2, {0.0, 0.0}, {0.0, 1.0}, 0.1));
    GridSpec tiny{6.0, 128, {-3.0, -3.0}};  // translate reaches y=3: margin < 4
    CHECK_THROWS_AS(build_test_functions(fam, 1.5, default_profiles(), tiny), DomainTooSmall);
}

TEST_CASE("square_function") {
    auto f = gaussian_field(8.0, 64, {0, 0}, 1.0);
    auto one = square_function({f});
    for (std::size_t i = 0; i < f.values.size(); ++i)
        CHECK(one.values[i].real() == doctest::Approx(std::abs(f.values[i])));

    auto sq2 = square_function({f, f});
    for (std::size_t i = 0; i < f.values.size(); ++i)
        CHECK(sq2.values[i].real() == doctest::Approx(std::sqrt(2.0) * std::abs(f.values[i])));

    // Parseval-style aggregation
    auto g = gaussian_field(8.0, 64, {1, 1}, 0.7);
    auto sq = square_function({f, g});
    CHECK(sq.norm2_sq() == doctest::Approx(f.norm2_sq() + g.norm2_sq()).epsilon(1e-12));

    auto other = gaussian_field(4.0, 64, {0, 0}, 1.0);
    CHECK_THROWS_AS(square_function({f, other}), std::invalid_argument);
}

TEST_CASE("disjoint translates aggregate as N^{1/q}") {
    TubeFamily fam;
    fam.d = 2;
    fam.delta = 0.15;
    for (int i = 0; i < 3; ++i)
        fam.tubes.push_back(make_tube(2, {1.2 * i, 0.0}, {0.0, 1.0}, 0.15));
    auto profiles = default_profiles();
    GridSpec gs = default_grid_spec(fam, 1024);
    auto pairs = build_test_functions(fam, 4.0 / 3.0, profiles, gs);
    std::vector<GridField2D> gs_fields;
    for (auto& pr : pairs) gs_fields.push_back(pr.gj);
    auto sq = square_function(gs_fields);
    double q = 4.0;
    double expected = std::pow(3.0, 1.0 / q) * profiles.norm_g(q) * profiles.norm_rho(q);
    CHECK(sq.norm_p(q) == doctest::Approx(expected).epsilon(1e-3));
}

TEST_CASE("kakeya_pairing") {
    auto fam = keich_family(3);
    auto profiles = default_profiles();
    GridSpec gs = default_grid_spec(fam, 512);
    auto pairs = build_test_functions(fam, 4.0 / 3.0, profiles, gs);

    // identity profile: supports are disjoint so every pairing vanishes
    std::vector<DirectionalSymbol> ones;
    for (const auto& t : fam.tubes) {
        DirectionalSymbol s;
        s.u = t.dir2();
        s.r = 64.0;
        s.m = [](double) { return 1.0; };
        ones.push_back(s);
    }
    auto res1 = kakeya_pairing(pairs, ones);
    for (const auto& v : res1.per_j) CHECK(std::abs(v) < 1e-12);

    // single pair: spread is zero by definition
    std::vector<TestFunctionPair> one_pair;
    one_pair.push_back(pairs[0]);
    auto res2 = kakeya_pairing(one_pair, {ones[0]});
    CHECK(res2.spread == doctest::Approx(0.0));

    CHECK_THROWS_AS(kakeya_pairing(pairs, {ones[0]}), std::invalid_argument);
}

TEST_CASE("pairing spread stays bounded over the r sweep") {
    auto fam = keich_family(4);
    auto profiles = default_profiles();
    GridSpec gs = default_grid_spec(fam, 1024);
    auto pairs = build_test_functions(fam, 4.0 / 3.0, profiles, gs);
    for (double lr : {10.0, 12.0, 14.0}) {
        double r = std::pow(2.0, lr);
        std::vector<DirectionalSymbol> syms;
        for (const auto& t : fam.tubes) {
            DirectionalSymbol s;
            s.u = t.dir2();
            s.r = r;
            s.m = kBall;
            syms.push_back(s);
        }
        auto res = kakeya_pairing(pairs, syms);
        CHECK(res.spread * r * fam.delta * fam.delta < 0.01);  // measured ~8e-4 max
    }
}

TEST_CASE("certify_lower_bound trivial and error paths") {
    auto fam = keich_family(3);
    CertifyOptions opt;
    opt.grid_n = 512;

    // constant symbol: pairings vanish, certified bound 0
    auto rep = certify_lower_bound(fam, [](double) { return 1.0; }, 4.0 / 3.0, 64.0, opt);
    CHECK(rep.value <= 1e-10);

    CHECK_THROWS_AS(certify_lower_bound(fam, kBall, 2.5, 64.0, opt), std::invalid_argument);
    CHECK_THROWS_AS(certify_lower_bound(fam, kBall, 4.0 / 3.0, 0.5, opt), std::invalid_argument);

    // failed disjointness certificate: refuses
    TubeFamily dup;
    dup.d = 2;
    dup.delta = 0.1;
    auto t = make_tube(2, {0, 0}, {0, 1}, 0.1);
    dup.tubes = {t, t};
    CHECK_THROWS_AS(certify_lower_bound(dup, kBall, 4.0 / 3.0, 64.0, opt), ConstraintViolation);
}

TEST_CASE("certify_lower_bound chain slacks on the ball profile") {
    auto fam = keich_family(4);
    CertifyOptions opt;
    opt.grid_n = 1024;
    auto rep = certify_lower_bound(fam, kBall, 4.0 / 3.0, 4096.0, opt);
    CHECK(rep.value > 0.0);
    CHECK(rep.param("slack_cs") >= -1e-6);
    CHECK(rep.param("slack_hoelder") >= -1e-6);
    CHECK(rep.param("slack_kakeya") >= -1e-6);
    CHECK(rep.param("lhs") <= rep.param("cauchy_schwarz") * (1.0 + 1e-6));
    CHECK(rep.param("cauchy_schwarz") <= rep.param("hoelder") * (1.0 + 1e-6));
    CHECK(rep.param("square_input") <= rep.param("kakeya") * (1.0 + 1e-6));
}

TEST_CASE("certified bound non-decreasing when r tracks the tube scale") {
    // r chosen with r delta^2 = 16 fixed: the regime where the pairing target
    // is scale-stable; measured values 0.0346, 0.0359, 0.0356
    CertifyOptions opt;
    opt.grid_n = 1024;
    double prev = 0.0;
    for (int k : {3, 4, 5}) {
        auto fam = keich_family(k);
        double r = 16.0 / (fam.delta * fam.delta);
        auto rep = certify_lower_bound(fam, kBall, 4.0 / 3.0, r, opt);
        CHECK(rep.value >= prev * 0.95);
        prev = rep.value;
    }
}

TEST_CASE("certify invariant under rigid motion and grid doubling") {
    auto fam = keich_family(3);
    CertifyOptions opt;
    opt.grid_n = 512;
    double r = 16.0 / (fam.delta * fam.delta);
    auto base = certify_lower_bound(fam, kBall, 4.0 / 3.0, r, opt);

    CertifyOptions fine = opt;
    fine.grid_n = 1024;
    auto doubled = certify_lower_bound(fam, kBall, 4.0 / 3.0, r, fine);
    CHECK(doubled.value == doctest::Approx(base.value).epsilon(0.02));

    TubeFamily moved = fam;
    double ang = 0.61;
    for (auto& tb : moved.tubes) {
        Vec2 o = rotate(tb.origin2(), ang) + Vec2{0.4, -0.7};
        Vec2 d = rotate(tb.dir2(), ang);
        tb.origin = {o.x, o.y};
        tb.direction = {d.x, d.y};
    }
    auto rot = certify_lower_bound(moved, kBall, 4.0 / 3.0, r, opt);
    CHECK(rot.value == doctest::Approx(base.value).epsilon(0.02));
}

TEST_CASE("change_of_variable_check") {
    auto F = SampledFunction::sample_real(
        [](double x) { return std::exp(-x * x / 8.0) * std::cos(1.7 * x); }, -40.0, 0.02, 4001);
    auto G = SampledFunction::sample_real([](double y) { return std::exp(-y * y / 2.0); }, -12.0,
                                          0.02, 1201);
    auto rep = change_of_variable_check(F, G, [](double) { return 1.0; }, 1e4, 1e2);
    CHECK(rep.value == doctest::Approx(0.0).epsilon(1e-12));

    // bounded profile with matched-scale features: constant stable under r1 growth
    double lo = 1e300, hi = 0.0;
    for (auto& pr : {std::pair<double, double>{1e4, 1e2}, {1e6, 1e3}}) {
        double r1 = pr.first;
        auto m = [r1](double t) {
            return std::sin(r1 * std::log(std::max(t, 1e-300))) > 0 ? 1.0 : -1.0;
        };
        auto rr = change_of_variable_check(F, G, m, pr.first, pr.second);
        lo = std::min(lo, rr.value);
        hi = std::max(hi, rr.value);
    }
    CHECK(hi / lo < 2.0);

    CHECK_THROWS_AS(change_of_variable_check(F, G, [](double) { return 1.0; }, 10.0, 100.0),
                    std::invalid_argument);
}

TEST_CASE("primitive-weight inequalities on random rapidly decaying functions") {
    // ||xF||_1 <= 0.5 ||x^2 F'||_1 and ||F||_1 <= ||x F'||_1
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.3, 1.7);
    for (int trial = 0; trial < 20; ++trial) {
        double a = u(rng), b = 2.0 * u(rng), c0 = u(rng) - 1.0, c1 = u(rng), c2 = u(rng) - 1.0;
        auto F = [&](double x) {
            return std::exp(-a * x * x) * (c0 + c1 * x + c2 * x * x) * std::cos(b * x);
        };
        auto dF = [&](double x) {
            double e = std::exp(-a * x * x);
            double poly = c0 + c1 * x + c2 * x * x, dpoly = c1 + 2 * c2 * x;
            return e * ((dpoly - 2 * a * x * poly) * std::cos(b * x) - b * poly * std::sin(b * x));
        };
        double xF = 0, F1 = 0, xdF = 0, x2dF = 0;
        const double h = 1e-3;
        for (double x = -30.0; x <= 30.0; x += h) {
            F1 += std::abs(F(x)) * h;
            xF += std::abs(x * F(x)) * h;
            xdF += std::abs(x * dF(x)) * h;
            x2dF += std::abs(x * x * dF(x)) * h;
        }
        CHECK(xF <= 0.5 * x2dF * (1.0 + 1e-6));
        CHECK(F1 <= xdF * (1.0 + 1e-6));
    }
}

TEST_CASE("relaxed_gain_check") {
    auto profiles = default_profiles();

    // disjoint translates at p = 2: the epsilon factor is 1 and the measured
    // constant is exactly the profile-norm product
    TubeFamily fam;
    fam.d = 2;
    fam.delta = 0.1;
    for (int i = 0; i < 4; ++i)
        fam.tubes.push_back(make_tube(2, {0.8 * i, 0.0}, {0.0, 1.0}, 0.1));
    auto rep = relaxed_gain_check(fam, 2.0, profiles, 1024);
    double expected = profiles.norm_f(2.0) * profiles.norm_sigma(2.0) * profiles.norm_g(2.0) *
                      profiles.norm_rho(2.0);
    CHECK(rep.value == doctest::Approx(expected).epsilon(1e-3));

    // duplicated tube at p = 4/3: overlap count enters quadratically and the
    // explicit-constant route dominates the measured g-norm route
    TubeFamily dup = fam;
    dup.tubes.push_back(dup.tubes[0]);
    auto rep2 = relaxed_gain_check(dup, 4.0 / 3.0, profiles, 1024);
    CHECK(rep2.param("g_route_lhs") <= rep2.param("g_route_rhs") * (1.0 + 1e-6));
    CHECK(rep2.value <= rep2.param("C_explicit") * (1.0 + 1e-6));
    // N-bar mass: 5 diagonal terms plus the two cross terms of the duplicate
    CHECK(rep2.param("overlap_l2_sq") == doctest::Approx(7.0 * 0.2).epsilon(1e-9));

    // interpolated p sits between the endpoint constants
    auto rep43 = relaxed_gain_check(fam, 4.0 / 3.0, profiles, 1024);
    auto rep32 = relaxed_gain_check(fam, 1.5, profiles, 1024);
    double cmin = std::min(rep.value, rep43.value), cmax = std::max(rep.value, rep43.value);
    CHECK(rep32.value >= cmin * 0.9);
    CHECK(rep32.value <= cmax * 1.1);

    CHECK_THROWS_AS(relaxed_gain_check(fam, 3.0, profiles, 256), std::invalid_argument);
}
