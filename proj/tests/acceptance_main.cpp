// Acceptance suite: one line per criterion, every criterion always runs.

#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "kakeya/besicovitch.hpp"
#include "kakeya/bounds.hpp"
#include "kakeya/filterbank.hpp"
#include "kakeya/multiplier.hpp"
#include "kakeya/spherical.hpp"
#include "kakeya/tube.hpp"

using namespace kakeya;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

// ---------------------------------------------------------------------------
void criterion1_partition() {
    auto t0 = Clock::now();
    auto grid = SampledFunction::sample_real([](double) { return 0.0; }, -4097.0, 0.05, 163880);
    double residual = -1.0;
    bool ok = true;
    try {
        auto bank = build_filterbank(12, grid, 1e-10);
        residual = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            double x = grid.x(i);
            if (std::abs(x) > 4096.0) continue;
            residual = std::max(residual, std::abs(bank.partition(x) - 1.0));
        }
    } catch (const std::exception&) {
        ok = false;
    }
    double dt = seconds_since(t0);
    ok = ok && residual <= 1e-10 && dt < 1.0;
    report(1, ok, fmt("partition residual %.3e over |x|<=2^12 (tol 1e-10), %.2fs (cap 1s)",
                      residual, dt));
}

void criterion2_keich_curve() {
    auto t0 = Clock::now();
    bool decreasing = true, certs = true;
    std::vector<double> eps;
    for (int k = 4; k <= 9; ++k) {
        auto fam = keich_family(k);
        auto rep = compression_ratio(fam, fam.delta / 8.0, true);
        certs = certs && rep.has_flag("CERTIFICATE_PASSED");
        if (!eps.empty() && rep.value >= eps.back()) decreasing = false;
        eps.push_back(rep.value);
    }
    double sxx = 0.0, sxy = 0.0;
    for (int i = 0; i < 6; ++i) {
        double x = 1.0 / ((i + 4) * std::log(2.0));
        sxx += x * x;
        sxy += x * eps[static_cast<std::size_t>(i)];
    }
    double C = sxy / sxx;
    double worst = 0.0;
    for (int k = 6; k <= 9; ++k) {
        double x = 1.0 / (k * std::log(2.0));
        worst = std::max(worst, std::abs(eps[static_cast<std::size_t>(k - 4)] - C * x) / (C * x));
    }
    double dt = seconds_since(t0);
    bool ok = decreasing && certs && worst < 0.20 && dt < 60.0;
    report(2, ok,
           fmt("keich k=4..9 decreasing=%d certificates=%d fit C=%.3f max residual(k>=6)=%.1f%% "
               "(cap 20%%), %.1fs (cap 60s)",
               decreasing, certs, C, 100 * worst, dt));
}

void criterion3_infimum() {
    auto t0 = Clock::now();
    std::mt19937_64 rng(20240817);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    bool grid_ok = true, eq_ok = true;
    for (int trial = 0; trial < 100; ++trial) {
        double alpha = std::pow(10.0, 6.0 * u(rng));
        double beta = std::pow(10.0, 6.0 * u(rng));
        double A = std::pow(10.0, 6.0 * u(rng));
        auto r = bounds::infimum_bound(alpha, beta, A);
        if (!(r.grid_min <= r.closed_form * (1.0 + 1e-9))) grid_ok = false;
        double dstar = std::pow(A, -1.0 / (alpha + beta));
        double at_star = std::pow(dstar, alpha) + 1.0 / (A * std::pow(dstar, beta));
        if (std::abs(at_star - r.closed_form) > 1e-6 * r.closed_form) eq_ok = false;
    }
    double dt = seconds_since(t0);
    bool ok = grid_ok && eq_ok && dt < 1.0;
    report(3, ok, fmt("infimum lemma on 100 seeded draws: grid<=closed %d, equality at delta* %d, "
                      "%.2fs (cap 1s)",
                      grid_ok, eq_ok, dt));
}

void criterion4_certifier() {
    auto t0 = Clock::now();
    auto ball = [](double s) { return s <= 1.0 ? 1.0 : 0.0; };
    const double r = 4096.0;  // 2^12
    bool slacks_ok = true, spread_ok = true;
    std::vector<double> values;
    std::string detail;
    for (int k : {4, 6, 8}) {
        auto fam = keich_family(k);
        multiplier::CertifyOptions opt;
        opt.grid_n = 2048;
        auto rep = multiplier::certify_lower_bound(fam, ball, 4.0 / 3.0, r, opt);
        slacks_ok = slacks_ok && rep.param("slack_cs") >= -1e-6 &&
                    rep.param("slack_hoelder") >= -1e-6 && rep.param("slack_kakeya") >= -1e-6;
        // fixture constant recorded from the reference run (max seen ~2.4e-3)
        spread_ok = spread_ok && rep.param("spread_r_delta2") <= 0.05;
        values.push_back(rep.value);
        detail += fmt("k%d: S>=%.4g spread*r*d2=%.2e | ", k, rep.value,
                      rep.param("spread_r_delta2"));
    }
    bool monotone = values[1] >= 0.95 * values[0] && values[2] >= 0.95 * values[1];
    double dt = seconds_since(t0);
    bool ok = slacks_ok && spread_ok && monotone && dt < 300.0;
    report(4, ok,
           detail + fmt("slacks>=-1e-6:%d spread<=fixture:%d nondecreasing(5%%):%d %.0fs (cap 300s)",
                        slacks_ok, spread_ok, monotone, dt));
}

void criterion5_zygmund_bridge() {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    bool ok = true;
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const int N = 8;
        std::vector<double> amps(N + 1), phases(N + 1);
        for (int n = 0; n <= N; ++n) {
            amps[static_cast<std::size_t>(n)] = u(rng) * std::pow(2.0, -0.5 * n);
            phases[static_cast<std::size_t>(n)] = 2 * M_PI * u(rng);
        }
        auto F = SampledFunction::sample_real(
            [&](double x) {
                double s = 0.0;
                for (int n = 0; n <= N; ++n)
                    s += amps[static_cast<std::size_t>(n)] *
                         std::cos(2 * M_PI * std::pow(2.0, n) * x + phases[static_cast<std::size_t>(n)]);
                return s;
            },
            -0.5, 1.0 / 8192, 2 * 8192 + 1);
        for (double h : {0.011, 0.052}) {
            double direct = zygmund_modulus(F, h);
            double bound = modulus_from_lp(amps, h, 2 * M_PI);
            worst = std::max(worst, direct / bound);
            if (direct > bound * 1.05) ok = false;
        }
    }
    report(5, ok, fmt("10 synthetic spectra: direct Zygmund quotient <= level bound "
                      "(worst ratio %.3f, margin 5%%)",
                      worst));
}

void criterion6_classification() {
    FilterBank bank(20);
    auto chi_rep =
        classify_b0_adaptive([](double t) { return t > 0.0 && t < 1.0 ? 1.0 : 0.0; }, 1.5, bank);
    bool chi_ok = chi_rep.verdict == "INCONSISTENT" && chi_rep.param("floor_fraction") >= 0.15;

    auto osc = [](double t) {
        double a = std::abs(t);
        if (a >= 1.0 || a < 1e-300) return 0.0;
        double bump = std::exp(1.0 - 1.0 / (1.0 - t * t));
        return std::sin(std::log(std::abs(std::log(a)))) * bump;
    };
    auto osc_rep = classify_b0_adaptive(osc, 1.5, bank);
    bool osc_ok = osc_rep.verdict == "CONSISTENT_B0" && osc_rep.param("slope") < 0.0;

    report(6, chi_ok && osc_ok,
           fmt("indicator: %s floor=%.3f (>=0.15); oscillator: %s slope=%.4f (<0)",
               chi_rep.verdict.c_str(), chi_rep.param("floor_fraction"), osc_rep.verdict.c_str(),
               osc_rep.param("slope")));
}

void criterion7_change_of_variable() {
    auto F = SampledFunction::sample_real(
        [](double x) { return std::exp(-x * x / 8.0) * std::cos(1.7 * x); }, -40.0, 0.01, 8001);
    auto G = SampledFunction::sample_real([](double y) { return std::exp(-y * y / 2.0); }, -12.0,
                                          0.01, 2401);
    auto one = multiplier::change_of_variable_check(F, G, [](double) { return 1.0; }, 1e4, 1e2);
    bool exact_ok = std::abs(one.value) <= 1e-15;

    bool stable_ok = true;
    double worst_ratio = 0.0;
    for (unsigned seed : {1u, 2u, 3u}) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> u(0.0, 2 * M_PI);
        double phis[5], amps[5], asum = 0.0;
        for (int k = 0; k < 5; ++k) {
            phis[k] = u(rng);
            amps[k] = 0.3 + u(rng) / (2 * M_PI);
            asum += amps[k];
        }
        double lo = 1e300, hi = 0.0;
        for (auto& pr :
             {std::pair<double, double>{1e3, std::sqrt(1e3)}, {1e4, 1e2}, {1e6, 1e3}}) {
            double r1 = pr.first;
            auto m = [&, r1](double t) {
                double s = 0.0, lt = std::log(std::max(t, 1e-300));
                for (int k = 0; k < 5; ++k)
                    s += amps[k] * ((std::sin((k + 1) * r1 * lt + phis[k]) > 0) ? 1.0 : -1.0);
                return s / asum;
            };
            auto rep = multiplier::change_of_variable_check(F, G, m, pr.first, pr.second);
            lo = std::min(lo, rep.value);
            hi = std::max(hi, rep.value);
        }
        worst_ratio = std::max(worst_ratio, hi / lo);
        if (hi / lo >= 2.0) stable_ok = false;
    }

    // helper inequalities on 20 seeded rapidly decaying functions
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.3, 1.7);
    bool helpers_ok = true;
    for (int trial = 0; trial < 20; ++trial) {
        double a = u(rng), b = 2.0 * u(rng), c0 = u(rng) - 1.0, c1 = u(rng), c2 = u(rng) - 1.0;
        auto Ff = [&](double x) {
            return std::exp(-a * x * x) * (c0 + c1 * x + c2 * x * x) * std::cos(b * x);
        };
        auto dFf = [&](double x) {
            double e = std::exp(-a * x * x);
            double poly = c0 + c1 * x + c2 * x * x, dpoly = c1 + 2 * c2 * x;
            return e * ((dpoly - 2 * a * x * poly) * std::cos(b * x) - b * poly * std::sin(b * x));
        };
        double xF = 0, F1 = 0, xdF = 0, x2dF = 0;
        const double h = 1e-3;
        for (double x = -30.0; x <= 30.0; x += h) {
            F1 += std::abs(Ff(x)) * h;
            xF += std::abs(x * Ff(x)) * h;
            xdF += std::abs(x * dFf(x)) * h;
            x2dF += std::abs(x * x * dFf(x)) * h;
        }
        if (xF > 0.5 * x2dF * (1 + 1e-6) || F1 > xdF * (1 + 1e-6)) helpers_ok = false;
    }
    bool ok = exact_ok && stable_ok && helpers_ok;
    report(7, ok,
           fmt("m=1 ratio %.1e (==0); seeded profiles constant max/min=%.3f (<2); helper "
               "inequalities on 20 seeds: %d",
               one.value, worst_ratio, helpers_ok));
}

void criterion8_distortion() {
    auto t0 = Clock::now();
    double k1lo = 1e300, k1hi = 0.0, k2lo = 1e300, k2hi = 0.0;
    for (double r : {1e3, 1e4, 1e6}) {
        for (double th : {0.3, M_PI / 2, 2.8}) {
            spherical::ReflectedPoleConfig cfg;
            cfg.r = r;
            cfg.theta = th;
            cfg.d = 2;
            auto rep = spherical::psi_distortion_check(cfg, 10000, r / 20.0, 7);
            k1lo = std::min(k1lo, rep.param("K1"));
            k1hi = std::max(k1hi, rep.param("K1"));
            k2lo = std::min(k2lo, rep.param("K2"));
            k2hi = std::max(k2hi, rep.param("K2"));
        }
    }
    double dt = seconds_since(t0);
    bool ok = k1hi / k1lo < 4.0 && k2hi / k2lo < 4.0 && dt < 10.0;
    report(8, ok,
           fmt("K1 in [%.3f, %.3f] ratio %.2f; K2 in [%.3f, %.3f] ratio %.2f (caps 4); %.1fs "
               "(cap 10s)",
               k1lo, k1hi, k1hi / k1lo, k2lo, k2hi, k2hi / k2lo, dt));
}

void criterion9_schur() {
    auto pts = spherical::SphereSample::fibonacci(100);
    bool unit_ok = true;
    for (double p : {1.0, 1.5, 2.0, 4.0, std::numeric_limits<double>::infinity()}) {
        auto rep = spherical::msp_lower_bound([](double) { return 1.0; }, pts, p, 4, 3, 1.0);
        if (std::abs(rep.value - 1.0) > 1e-9) unit_ok = false;
    }

    auto m = [](double t) { return std::sin(3.0 * t); };
    double msup = 0.0;
    for (Eigen::Index i = 0; i < pts.gram.rows(); ++i)
        for (Eigen::Index j = 0; j < pts.gram.cols(); ++j)
            if (i != j) msup = std::max(msup, std::abs(m(pts.gram(i, j))));
    auto p2 = spherical::msp_lower_bound(m, pts, 2.0, 64, 21);
    bool p2_ok = p2.value <= msup + 1e-9;

    bool nested_ok = true;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto small = spherical::SphereSample::random(40, 2, seed);
        auto big = spherical::SphereSample::random(120, 2, seed);
        spherical::Matrix best;
        auto rs = spherical::msp_lower_bound(m, small, 4.0, 8, seed, 0.0, &best);
        spherical::Matrix embedded = spherical::Matrix::Zero(120, 120);
        embedded.topLeftCorner(40, 40) = best;
        double embedded_ratio = spherical::schur_ratio(m, big, embedded, 4.0);
        auto rb = spherical::msp_lower_bound(m, big, 4.0, 8, seed);
        if (rs.value > std::max(rb.value, embedded_ratio) + 1e-9) nested_ok = false;
    }
    report(9, unit_ok && p2_ok && nested_ok,
           fmt("msp(m=1)=1 for all p: %d; p=2 ratios <= sup|m|=%.3f: %d; nested monotonicity on "
               "10 seeds: %d",
               unit_ok, msup, p2_ok, nested_ok));
}

void criterion10_integrability() {
    auto d = bounds::integrability_test(bounds::FModel::log_power(1.0), 4.0);
    auto c = bounds::integrability_test(bounds::FModel::power(0.5), 4.0);
    bool verdicts_ok = d.verdict == "DIVERGES" && c.verdict == "CONVERGES";

    const double eps_prime = 1.0, p = 4.0;
    const double alpha = eps_prime * std::abs(p - 2.0) / (4.0 * p + eps_prime * std::abs(p - 2.0));
    std::vector<double> gaps, vals;
    for (double g = 1e-6; g <= 1.01e-2; g *= std::sqrt(10.0)) {
        gaps.push_back(g);
        vals.push_back(bounds::holder_modulus_from_wn(bounds::FModel::power(eps_prime), p, g));
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = static_cast<int>(gaps.size());
    for (int i = 0; i < n; ++i) {
        double x = std::log(gaps[static_cast<std::size_t>(i)]);
        double y = std::log(vals[static_cast<std::size_t>(i)]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    bool slope_ok = std::abs(slope - alpha) <= 0.05 * alpha;
    report(10, verdicts_ok && slope_ok,
           fmt("log:1@p4 %s, pow:0.5@p4 %s; Holder slope %.5f vs alpha %.5f (5%% tol)",
               d.verdict.c_str(), c.verdict.c_str(), slope, alpha));
}

}  // namespace

int main() {
    auto t0 = Clock::now();
    criterion1_partition();
    criterion2_keich_curve();
    criterion3_infimum();
    criterion4_certifier();
    criterion5_zygmund_bridge();
    criterion6_classification();
    criterion7_change_of_variable();
    criterion8_distortion();
    criterion9_schur();
    criterion10_integrability();
    std::printf("%d/10 criteria passed (total %.0fs)\n", 10 - g_failures, seconds_since(t0));
    return g_failures == 0 ? 0 : 1;
}
