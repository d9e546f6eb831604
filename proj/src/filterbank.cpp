#include "kakeya/filterbank.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "kakeya/errors.hpp"
#include "kakeya/fftutil.hpp"

namespace kakeya {

namespace {

double glue(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

// 1 on (-inf,1], 0 on [2,inf), smooth monotone in between
double smooth_step_down(double u) {
    if (u <= 1.0) return 1.0;
    if (u >= 2.0) return 0.0;
    double a = glue(2.0 - u), b = glue(u - 1.0);
    return a / (a + b);
}

std::size_t next_fast_size(std::size_t n) {
    for (std::size_t m = n;; ++m) {
        std::size_t r = m;
        for (std::size_t p : {2, 3, 5}) {
            while (r % p == 0) r /= p;
        }
        if (r == 1) return m;
    }
}

double nyquist(const SampledFunction& f) { return 0.5 / f.spacing; }

void check_band(const SampledFunction& f, const FilterBank& bank) {
    if (std::pow(2.0, bank.levels()) > nyquist(f) * (1.0 + 1e-12))
        throw BandExceeded("lp: level frequency exceeds the grid Nyquist band");
}

// Core spectral application: multiply the (padded) spectrum by gain(xi).
SampledFunction apply_spectral(const SampledFunction& f,
                               const std::function<double(double)>& gain_re_or_full,
                               bool derivative, Extension ext, double pad_units) {
    f.validate();
    const std::size_t n = f.size();
    std::size_t pad = 0;
    if (ext == Extension::ZeroPadded)
        pad = static_cast<std::size_t>(std::ceil(pad_units / f.spacing));
    std::size_t m = ext == Extension::Periodic ? n : next_fast_size(n + 2 * pad);
    std::vector<std::complex<double>> buf(m, 0.0);
    std::copy(f.values.begin(), f.values.end(), buf.begin() + (ext == Extension::Periodic ? 0 : pad));
    fft::forward(buf);
    const double df = 1.0 / (static_cast<double>(m) * f.spacing);
    for (std::size_t i = 0; i < m; ++i) {
        double xi = static_cast<double>(fft::freq_index(i, m)) * df;
        double g = gain_re_or_full(xi);
        std::complex<double> factor(g, 0.0);
        if (derivative) factor *= std::complex<double>(0.0, 2.0 * std::numbers::pi * xi);
        buf[i] *= factor;
    }
    fft::inverse(buf);
    SampledFunction out;
    out.start = f.start;
    out.spacing = f.spacing;
    out.values.assign(buf.begin() + (ext == Extension::Periodic ? 0 : pad),
                      buf.begin() + (ext == Extension::Periodic ? 0 : pad) + n);
    return out;
}

}  // namespace

FilterBank::FilterBank(int levels) : levels_(levels) {
    if (levels < 1) throw std::invalid_argument("FilterBank: levels >= 1 required");
}

double FilterBank::w0(double xi) const { return smooth_step_down(std::abs(xi)); }

double FilterBank::w(double u) const { return smooth_step_down(u) - smooth_step_down(2.0 * u); }

double FilterBank::wn(int n, double xi) const {
    if (n == 0) return w0(xi);
    return w(std::abs(xi) / std::pow(2.0, n));
}

double FilterBank::partition(double xi) const {
    double s = w0(xi);
    for (int n = 1; n <= levels_; ++n) s += wn(n, xi);
    return s;
}

FilterBank build_filterbank(int levels, const SampledFunction& grid, double tolerance) {
    FilterBank bank(levels);
    const double band = std::pow(2.0, levels);
    double residual = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double x = grid.x(i);
        if (std::abs(x) > band) continue;
        residual = std::max(residual, std::abs(bank.partition(x) - 1.0));
    }
    if (residual > tolerance)
        throw ConstructionFailed("build_filterbank: partition residual " + std::to_string(residual));
    return bank;
}

SampledFunction convolve_level(const SampledFunction& f, const FilterBank& bank, int n,
                               Extension ext, double pad_units) {
    check_band(f, bank);
    return apply_spectral(f, [&bank, n](double xi) { return bank.wn(n, xi); }, false, ext, pad_units);
}

SampledFunction convolve_level_derivative(const SampledFunction& f, const FilterBank& bank, int n,
                                          Extension ext, double pad_units) {
    check_band(f, bank);
    return apply_spectral(f, [&bank, n](double xi) { return bank.wn(n, xi); }, true, ext, pad_units);
}

std::vector<SampledFunction> lp_coefficients(const SampledFunction& f, const FilterBank& bank,
                                             Extension ext, double pad_units) {
    check_band(f, bank);
    std::vector<SampledFunction> out;
    out.reserve(bank.levels() + 1);
    for (int n = 0; n <= bank.levels(); ++n) out.push_back(convolve_level(f, bank, n, ext, pad_units));
    return out;
}

double zygmund_modulus(const SampledFunction& F, double h) {
    F.validate();
    if (h < 2.0 * F.spacing)
        throw std::invalid_argument("zygmund_modulus: h below twice the grid spacing");
    double sup = 0.0;
    bool any = false;
    for (std::size_t i = 0; i < F.size(); ++i) {
        double x = F.x(i);
        if (x - h < F.start || x + h > F.end()) continue;
        any = true;
        sup = std::max(sup, std::abs(F.at(x + h) + F.at(x - h) - 2.0 * F.values[i]));
    }
    if (!any) throw std::invalid_argument("zygmund_modulus: h exceeds the sampled range");
    return sup / h;
}

double modulus_from_lp(const std::vector<double>& sup_norms, double h, double C) {
    if (!(h > 0.0) || !(C > 0.0)) throw std::invalid_argument("modulus_from_lp: h, C must be positive");
    double total = 0.0;
    for (std::size_t n = 0; n < sup_norms.size(); ++n) {
        double scale = std::pow(2.0, 2.0 * static_cast<double>(n));
        total += std::min(4.0 / h, h * C * C * scale) * sup_norms[n];
    }
    return total;
}

SampledFunction maximal_function(const SampledFunction& f) {
    f.validate();
    const std::size_t n = f.size();
    std::vector<double> vals(n);
    for (std::size_t i = 0; i < n; ++i) {
        double re = f.values[i].real();
        if (re < -1e-12 || std::abs(f.values[i].imag()) > 1e-12)
            throw std::invalid_argument("maximal_function: input must be real and nonnegative");
        vals[i] = std::max(re, 0.0);
    }
    std::vector<double> prefix(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + vals[i];

    SampledFunction out = f;
    for (std::size_t i = 0; i < n; ++i) {
        double best = vals[i];  // radius -> 0 recovers f
        for (std::size_t m = 1; m < 2 * n; m *= 2) {
            std::size_t lo = i > m ? i - m : 0;
            std::size_t hi = std::min(n, i + m + 1);
            double mass = (prefix[hi] - prefix[lo]) * f.spacing;
            double t = (static_cast<double>(m) + 0.5) * f.spacing;
            best = std::max(best, mass / (2.0 * t));
            if (m >= n) break;
        }
        out.values[i] = best;
    }
    return out;
}

std::vector<double> level_sup_norms_adaptive(const std::function<double(double)>& f,
                                             double support_radius, const FilterBank& bank) {
    std::vector<double> norms(bank.levels() + 1, 0.0);
    for (int n = 0; n <= bank.levels(); ++n) {
        // sampling rate 4x the top of the level's band, domain padded by the
        // kernel's decay length at this scale
        double rate = 4.0 * std::pow(2.0, std::max(n, 1));
        double pad = std::max(1.0, 48.0 / std::pow(2.0, n));
        double h = 1.0 / rate;
        double lo = -support_radius - pad;
        auto count = static_cast<std::size_t>(std::ceil(2.0 * (support_radius + pad) / h)) + 1;
        auto fs = SampledFunction::sample_real(f, lo, h, count);
        FilterBank level_bank(std::max(n, 1));
        auto conv = convolve_level(fs, level_bank, n, Extension::ZeroPadded, pad);
        norms[static_cast<std::size_t>(n)] = conv.max_abs();
    }
    return norms;
}

BoundReport classify_b0_from_norms(const std::vector<double>& sup_norms, int fit_hi) {
    BoundReport r;
    r.name = "classify_b0";
    int levels = static_cast<int>(sup_norms.size()) - 1;
    if (fit_hi >= 0) levels = std::min(levels, fit_hi);
    double maxn = 0.0;
    for (double v : sup_norms) maxn = std::max(maxn, v);
    if (maxn <= 0.0) {
        r.verdict = "CONSISTENT_B0";
        r.value = 0.0;
        r.provenance = {"all-levels-zero"};
        return r;
    }
    // least-squares slope of log sup-norm over n in [fit_lo, N]
    const int fit_lo = std::min(4, levels);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    double floor_frac = 1e300;
    for (int n = fit_lo; n <= levels; ++n) {
        double v = std::max(sup_norms[static_cast<std::size_t>(n)], 1e-300);
        floor_frac = std::min(floor_frac, v / maxn);
        double y = std::log(v);
        sx += n;
        sy += y;
        sxx += static_cast<double>(n) * n;
        sxy += n * y;
        ++m;
    }
    double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    r.set_param("slope", slope);
    r.set_param("floor_fraction", floor_frac);
    r.set_param("max_sup_norm", maxn);
    for (int n = 0; n <= levels; ++n)
        r.set_param("L" + std::to_string(n), sup_norms[static_cast<std::size_t>(n)]);
    constexpr double kSlopeTol = -0.01;
    if (slope < kSlopeTol) {
        r.verdict = "CONSISTENT_B0";
    } else if (floor_frac >= 0.1) {
        r.verdict = "INCONSISTENT";
    } else {
        r.verdict = "UNDECIDED";
    }
    r.value = slope;
    r.provenance = {"sup-norm-trend", "finite-data-only"};
    return r;
}

BoundReport classify_b0(const SampledFunction& f, const FilterBank& bank) {
    auto levels = lp_coefficients(f, bank);
    std::vector<double> norms;
    norms.reserve(levels.size());
    for (const auto& g : levels) norms.push_back(g.max_abs());
    // fit only levels whose full band [2^{n-1}, 2^{n+1}] sits under Nyquist
    int fit_hi = static_cast<int>(std::floor(std::log2(0.5 / f.spacing))) - 1;
    BoundReport r = classify_b0_from_norms(norms, fit_hi);

    // dual check: Zygmund quotient of the numeric primitive at shrinking h
    SampledFunction prim = f;
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        acc += f.values[i] * f.spacing;
        prim.values[i] = acc;
    }
    int idx = 0;
    for (double mult : {64.0, 16.0, 4.0}) {
        double h = mult * f.spacing;
        if (h * 2 > (f.end() - f.start)) continue;
        r.set_param("zygmund_h" + std::to_string(idx++), zygmund_modulus(prim, h));
    }
    return r;
}

BoundReport classify_b0_adaptive(const std::function<double(double)>& f, double support_radius,
                                 const FilterBank& bank) {
    return classify_b0_from_norms(level_sup_norms_adaptive(f, support_radius, bank));
}

BoundReport envelope_check(const SampledFunction& F, const FilterBank& bank,
                           const std::function<double(double, double)>& envelope) {
    BoundReport r;
    r.name = "envelope_check";
    double worst = 0.0;
    for (int n = 1; n <= bank.levels(); ++n) {
        auto conv = convolve_level(F, bank, n);
        auto dconv = convolve_level_derivative(F, bank, n);
        double r_scale = std::pow(2.0, n);
        double c = 0.0, cd = 0.0;
        for (std::size_t i = 0; i < conv.size(); ++i) {
            double g = envelope(r_scale, conv.x(i));
            if (!(g > 0.0)) throw std::invalid_argument("envelope_check: envelope must be positive");
            c = std::max(c, std::abs(conv.values[i]) / g);
            cd = std::max(cd, std::abs(dconv.values[i]) / (r_scale * g));
        }
        r.set_param("C" + std::to_string(n), c);
        r.set_param("Cderiv" + std::to_string(n), cd);
        worst = std::max({worst, c, cd});
    }
    r.value = worst;
    r.provenance = {"per-level-envelope-ratio", "derivative-scaled-by-2^n"};
    return r;
}

}  // namespace kakeya
