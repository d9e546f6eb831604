#include "kakeya/grid2d.hpp"

#include <cmath>
#include <stdexcept>

#include "kakeya/fftutil.hpp"

namespace kakeya {

GridField2D GridField2D::zeros(double extent, std::size_t n, Vec2 origin) {
    GridField2D f;
    f.extent = extent;
    f.n = n;
    f.origin = origin;
    f.values.assign(n * n, 0.0);
    f.validate();
    return f;
}

double GridField2D::norm_p(double p) const {
    if (std::isinf(p)) {
        double m = 0.0;
        for (const auto& v : values) m = std::max(m, std::abs(v));
        return m;
    }
    double s = 0.0;
    for (const auto& v : values) s += std::pow(std::abs(v), p);
    return std::pow(s * cell_area(), 1.0 / p);
}

double GridField2D::norm2_sq() const {
    double s = 0.0;
    for (const auto& v : values) s += std::norm(v);
    return s * cell_area();
}

std::complex<double> GridField2D::inner(const GridField2D& other) const {
    if (other.n != n) throw std::invalid_argument("GridField2D::inner: grid mismatch");
    std::complex<double> s = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) s += values[i] * std::conj(other.values[i]);
    return s * cell_area();
}

void GridField2D::to_spectrum() { fft::forward2d(values, n, n); }

void GridField2D::to_physical() { fft::inverse2d(values, n, n); }

Vec2 GridField2D::freq(std::size_t ix, std::size_t iy) const {
    return {static_cast<double>(fft::freq_index(ix, n)) / extent,
            static_cast<double>(fft::freq_index(iy, n)) / extent};
}

void GridField2D::validate() const {
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("GridField2D: n must be a power of two");
    if (values.size() != n * n) throw std::invalid_argument("GridField2D: size mismatch");
    if (!(extent > 0.0)) throw std::invalid_argument("GridField2D: extent must be positive");
}

}  // namespace kakeya
