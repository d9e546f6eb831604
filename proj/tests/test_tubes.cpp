#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "kakeya/besicovitch.hpp"
#include "kakeya/errors.hpp"
#include "kakeya/polygon.hpp"
#include "kakeya/tube.hpp"

using namespace kakeya;

namespace {

Polygon rect_poly(const OrientedRect& r) {
    return {r.corner(0), r.corner(1), r.corner(2), r.corner(3)};
}

// Exact union area of a few rectangles by inclusion-exclusion over convex
// intersections. Independent of the rasterization path.
double union_area_oracle(const std::vector<OrientedRect>& rects) {
    const int n = static_cast<int>(rects.size());
    REQUIRE(n <= 8);
    double total = 0.0;
    for (int mask = 1; mask < (1 << n); ++mask) {
        Polygon inter;
        bool first = true;
        for (int i = 0; i < n && (first || !inter.empty()); ++i) {
            if (!(mask & (1 << i))) continue;
            if (first) {
                inter = rect_poly(rects[i]);
                first = false;
            } else {
                inter = convex_intersection(inter, rect_poly(rects[i]));
            }
        }
        double a = polygon_area(inter);
        total += (std::popcount(static_cast<unsigned>(mask)) % 2 == 1) ? a : -a;
    }
    return total;
}

TubeFamily family_of(std::vector<Tube> tubes) {
    TubeFamily f;
    f.tubes = std::move(tubes);
    f.d = f.tubes.front().d;
    f.delta = f.tubes.front().delta;
    f.window = f.tubes.front().window;
    return f;
}

}  // namespace

TEST_CASE("make_tube basics") {
    auto t = make_tube(2, {0.0, 0.0}, {1.0, 0.0}, 0.1);
    CHECK(t.measure() == doctest::Approx(0.2));  // 1 x 2*delta rectangle

    auto t2 = make_tube(2, {0.0, 0.0}, {2.0, 0.0}, 0.1);
    CHECK(t2.direction[0] == doctest::Approx(1.0));
    CHECK(t2.direction[1] == doctest::Approx(0.0));

    CHECK_THROWS_AS(make_tube(2, {0, 0}, {1, 0}, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(make_tube(2, {0, 0}, {0, 0}, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(make_tube(2, {0, 0}, {1, 0}, 0.1, {3.0, 2.0}), std::invalid_argument);
}

TEST_CASE("tube measure in higher dimension") {
    auto t = make_tube(3, {0, 0, 0}, {0, 0, 1}, 0.1);
    CHECK(t.measure() == doctest::Approx(M_PI * 0.01));  // pi delta^2
}

TEST_CASE("translate_tube") {
    auto t = make_tube(2, {0.0, 0.0}, {1.0, 0.0}, 0.1);
    auto bar = translate_tube(t);
    CHECK(bar.origin[0] == doctest::Approx(2.0));
    CHECK(bar.origin[1] == doctest::Approx(0.0));
    CHECK(bar.length == doctest::Approx(1.0));

    auto t2 = make_tube(2, {1.0, 2.0}, {0.0, 1.0}, 0.05, {1.5, 2.5});
    auto bar2 = translate_tube(t2);
    CHECK(bar2.origin[1] == doctest::Approx(3.5));
    CHECK(bar2.length == doctest::Approx(1.0));

    // composing the (2,3) translate twice offsets by 4 along the direction
    auto bar3 = translate_tube(translate_tube(t));
    CHECK(bar3.origin[0] == doctest::Approx(4.0));
}

TEST_CASE("tubes_disjoint") {
    auto t = make_tube(2, {0, 0}, {1, 0}, 0.1);
    CHECK_FALSE(tubes_disjoint(t, t));

    auto off = make_tube(2, {0.0, 0.3}, {1, 0}, 0.1);  // parallel, 3*delta apart
    CHECK(tubes_disjoint(t, off));
    CHECK(tubes_disjoint(off, t));  // symmetry

    // crossing perpendicular tubes through a common point: the exact
    // polygon-intersection oracle must see positive overlap area
    auto v = make_tube(2, {0.5, -0.5}, {0, 1}, 0.1);
    double inter = rect_intersection_area(t.rect(), v.rect());
    CHECK(inter > 0.0);
    CHECK_FALSE(tubes_disjoint(t, v));

    auto t3 = make_tube(3, {0, 0, 0}, {1, 0, 0}, 0.1);
    CHECK_THROWS_AS(tubes_disjoint(t, t3), std::invalid_argument);
}

TEST_CASE("tubes_disjoint d=3 sampled path") {
    auto a = make_tube(3, {0, 0, 0}, {1, 0, 0}, 0.05);
    auto b = make_tube(3, {0, 0.2, 0}, {1, 0, 0}, 0.05);
    CHECK(tubes_disjoint(a, b));
    auto c = make_tube(3, {0.5, -0.5, 0}, {0, 1, 0}, 0.05);
    CHECK_FALSE(tubes_disjoint(a, c));
}

TEST_CASE("union_measure additivity and idempotence") {
    auto t1 = make_tube(2, {0, 0}, {1, 0}, 0.1);
    auto t2 = make_tube(2, {0, 1.0}, {1, 0}, 0.1);
    auto fam = family_of({t1, t2});
    auto um = union_measure(fam, 0.002);
    CHECK(std::abs(um.value - 0.4) <= um.error_bound);

    auto fam2 = family_of({t1, t1});
    auto um2 = union_measure(fam2, 0.002);
    CHECK(std::abs(um2.value - 0.2) <= um2.error_bound);

    CHECK_THROWS_AS(union_measure(fam, 0.5), ResolutionTooCoarse);
}

TEST_CASE("union_measure matches polygon-union oracle on random overlapping rectangles") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 12; ++trial) {
        int n = 2 + static_cast<int>(u(rng) * 4);  // 2..5 tubes
        std::vector<Tube> tubes;
        for (int i = 0; i < n; ++i) {
            double ang = u(rng) * 2 * M_PI;
            tubes.push_back(make_tube(2, {0.5 * u(rng), 0.5 * u(rng)},
                                      {std::cos(ang), std::sin(ang)}, 0.08));
        }
        auto fam = family_of(std::move(tubes));
        auto um = union_measure(fam, 0.0015);
        std::vector<OrientedRect> rects;
        for (const auto& t : fam.tubes) rects.push_back(t.rect());
        double exact = union_area_oracle(rects);
        CHECK(std::abs(um.value - exact) <= um.error_bound);
    }
}

TEST_CASE("union_measure d=3 Monte Carlo") {
    auto a = make_tube(3, {0, 0, 0}, {1, 0, 0}, 0.1);
    auto b = make_tube(3, {0, 0, 0.5}, {1, 0, 0}, 0.1);
    auto fam = family_of({a, b});
    auto um = union_measure(fam, 0.01);
    CHECK(std::abs(um.value - 2 * M_PI * 0.01) <= 3 * um.error_bound);
}

TEST_CASE("compression_ratio trivial cases") {
    auto t1 = make_tube(2, {0, 0}, {0, 1}, 0.05);
    auto single = family_of({t1});
    auto rep = compression_ratio(single, 0.002, true);
    CHECK(std::abs(rep.value - 1.0) <= rep.error_estimate);
    CHECK(rep.has_flag("CERTIFICATE_PASSED"));

    // parallel pairwise-disjoint tubes: ratio 1
    std::vector<Tube> tubes;
    for (int i = 0; i < 5; ++i) tubes.push_back(make_tube(2, {0.4 * i, 0.0}, {0, 1}, 0.05));
    auto fam = family_of(std::move(tubes));
    auto rep2 = compression_ratio(fam, 0.002, true);
    CHECK(std::abs(rep2.value - 1.0) <= rep2.error_estimate);
}

TEST_CASE("compression_ratio flags violations") {
    auto t1 = make_tube(2, {0, 0}, {0, 1}, 0.05);
    auto fam = family_of({t1, t1});  // identical tubes: translates overlap
    CHECK_THROWS_AS(compression_ratio(fam, 0.002, true), ConstraintViolation);
    auto rep = compression_ratio(fam, 0.002, false);
    CHECK(rep.has_flag("CERTIFICATE_FAILED"));
    try {
        compression_ratio(fam, 0.002, true);
    } catch (const ConstraintViolation& e) {
        REQUIRE(e.offending_pairs.size() == 1);
        CHECK(e.offending_pairs[0] == std::pair<int, int>{0, 1});
    }
}

TEST_CASE("compression_ratio dual-resolution agreement on a Keich family") {
    auto fam = keich_family(8);
    CHECK(fam.delta == doctest::Approx(std::pow(2.0, -9)));
    auto r1 = compression_ratio(fam, fam.delta / 8.0, true);
    auto r2 = compression_ratio(fam, fam.delta / 12.0, true);
    CHECK(r1.value < 1.0);
    CHECK(std::abs(r1.value - r2.value) <= r1.error_estimate + r2.error_estimate);
}

TEST_CASE("compression_ratio invariant under rigid motion") {
    auto fam = keich_family(4);
    auto rep = compression_ratio(fam, fam.delta / 8.0, false);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 3; ++trial) {
        double ang = u(rng) * 2 * M_PI;
        Vec2 shift{4 * u(rng) - 2, 4 * u(rng) - 2};
        TubeFamily moved = fam;
        for (auto& t : moved.tubes) {
            Vec2 o = rotate(t.origin2(), ang) + shift;
            Vec2 d = rotate(t.dir2(), ang);
            t.origin = {o.x, o.y};
            t.direction = {d.x, d.y};
        }
        auto rep2 = compression_ratio(moved, fam.delta / 8.0, false);
        CHECK(std::abs(rep2.value - rep.value) <= 2 * (rep.error_estimate + rep2.error_estimate));
    }
}

TEST_CASE("relaxed_score") {
    // disjoint translates: second factor is (b-a) = 1, score == compression
    std::vector<Tube> tubes;
    for (int i = 0; i < 4; ++i) tubes.push_back(make_tube(2, {0.5 * i, 0.0}, {0, 1}, 0.05));
    auto fam = family_of(std::move(tubes));
    auto rel = relaxed_score(fam, 0.002);
    auto cmp = compression_ratio(fam, 0.002, true);
    CHECK(rel.param("overlap_ratio") == doctest::Approx(1.0));
    CHECK(rel.value == doctest::Approx(cmp.value).epsilon(1e-9));

    // two identical tubes: second factor 2, union ratio 1/2 -> score = 2 * 1/2 * ...
    auto t = make_tube(2, {0, 0}, {0, 1}, 0.05);
    auto dup = family_of({t, t});
    auto rel2 = relaxed_score(dup, 0.002);
    CHECK(rel2.param("overlap_ratio") == doctest::Approx(2.0));
    CHECK(rel2.value == doctest::Approx(2.0 * rel2.param("union_ratio")).epsilon(1e-12));
}

TEST_CASE("relaxed_score dual resolution on jittered Keich family") {
    auto fam = keich_family(5);
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    for (auto& t : fam.tubes) {
        t.origin[0] += 0.3 * fam.delta * g(rng);
        t.origin[1] += 0.3 * fam.delta * g(rng);
    }
    auto a = relaxed_score(fam, fam.delta / 8.0);
    auto b = relaxed_score(fam, fam.delta / 16.0);
    CHECK(std::abs(a.value - b.value) / b.value < 0.10);
}

TEST_CASE("polygon clip primitives") {
    Polygon unit = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    CHECK(polygon_area(unit) == doctest::Approx(1.0));
    Polygon shifted = {{0.5, 0}, {1.5, 0}, {1.5, 1}, {0.5, 1}};
    CHECK(polygon_area(convex_intersection(unit, shifted)) == doctest::Approx(0.5));
    Polygon far = {{5, 5}, {6, 5}, {6, 6}, {5, 6}};
    CHECK(polygon_area(convex_intersection(unit, far)) == doctest::Approx(0.0));
}
