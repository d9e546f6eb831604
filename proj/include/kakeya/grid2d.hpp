#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "kakeya/vec2.hpp"

namespace kakeya {

/// Periodic complex field on an n x n grid covering [origin, origin + L)^2.
/// Fourier convention: integer frequencies xi = k / L with
/// fhat(xi) = integral of f e^{-2 pi i <x, xi>}.
struct GridField2D {
    double extent = 1.0;
    std::size_t n = 0;
    Vec2 origin{0.0, 0.0};
    std::vector<std::complex<double>> values;  // row-major: index = iy * n + ix

    static GridField2D zeros(double extent, std::size_t n, Vec2 origin = {0.0, 0.0});

    double cell() const { return extent / static_cast<double>(n); }
    double cell_area() const { return cell() * cell(); }
    Vec2 world(std::size_t ix, std::size_t iy) const {
        return {origin.x + cell() * static_cast<double>(ix),
                origin.y + cell() * static_cast<double>(iy)};
    }
    std::complex<double>& at(std::size_t ix, std::size_t iy) { return values[iy * n + ix]; }
    const std::complex<double>& at(std::size_t ix, std::size_t iy) const {
        return values[iy * n + ix];
    }

    double norm_p(double p) const;  // Riemann L_p norm; p = inf gives the max
    double norm2_sq() const;
    std::complex<double> inner(const GridField2D& other) const;  // <this, other> with conj on other

    void to_spectrum();  // in-place FFT (unnormalized)
    void to_physical();  // inverse FFT (normalized)

    /// Frequency of spectral bin (ix, iy), valid after to_spectrum().
    Vec2 freq(std::size_t ix, std::size_t iy) const;

    void validate() const;  // power-of-two n, finite values
};

}  // namespace kakeya
