#include "kakeya/raster.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace kakeya {

RasterGrid::RasterGrid(Vec2 lo, Vec2 hi, double cell) : lo_(lo), h_(cell) {
    if (!(cell > 0.0)) throw std::invalid_argument("RasterGrid: cell size must be positive");
    nx_ = static_cast<std::int64_t>(std::ceil((hi.x - lo.x) / cell)) + 1;
    ny_ = static_cast<std::int64_t>(std::ceil((hi.y - lo.y) / cell)) + 1;
    if (nx_ < 1 || ny_ < 1) throw std::invalid_argument("RasterGrid: empty box");
    words_per_row_ = static_cast<std::size_t>((nx_ + 63) / 64);
    bits_.assign(words_per_row_ * static_cast<std::size_t>(ny_), 0u);
}

void RasterGrid::fill_row_interval(std::int64_t iy, double xa, double xb) {
    // cells whose center x = lo + (ix + 0.5) h lies in [xa, xb]
    std::int64_t i0 = static_cast<std::int64_t>(std::ceil((xa - lo_.x) / h_ - 0.5));
    std::int64_t i1 = static_cast<std::int64_t>(std::floor((xb - lo_.x) / h_ - 0.5));
    i0 = std::max<std::int64_t>(i0, 0);
    i1 = std::min<std::int64_t>(i1, nx_ - 1);
    if (i0 > i1) return;
    std::uint64_t* row = bits_.data() + words_per_row_ * static_cast<std::size_t>(iy);
    std::int64_t w0 = i0 >> 6, w1 = i1 >> 6;
    if (w0 == w1) {
        std::uint64_t mask = (~0ull >> (63 - (i1 & 63))) & (~0ull << (i0 & 63));
        row[w0] |= mask;
        return;
    }
    row[w0] |= ~0ull << (i0 & 63);
    for (std::int64_t w = w0 + 1; w < w1; ++w) row[w] = ~0ull;
    row[w1] |= ~0ull >> (63 - (i1 & 63));
}

void RasterGrid::fill_rect(const OrientedRect& r) {
    // Row scan: for each grid row, the rectangle's intersection with the
    // horizontal line through the cell centers is a segment, obtained from
    // the two slab constraints in rotated coordinates.
    Vec2 u = r.dir, w = r.dir.perp();
    Vec2 c = r.origin + u * (0.5 * r.len);  // center
    double ymin = std::numeric_limits<double>::max(), ymax = -ymin;
    for (int i = 0; i < 4; ++i) {
        Vec2 p = r.corner(i);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    std::int64_t j0 = static_cast<std::int64_t>(std::ceil((ymin - lo_.y) / h_ - 0.5));
    std::int64_t j1 = static_cast<std::int64_t>(std::floor((ymax - lo_.y) / h_ - 0.5));
    j0 = std::max<std::int64_t>(j0, 0);
    j1 = std::min<std::int64_t>(j1, ny_ - 1);
    const double hl = 0.5 * r.len;
    for (std::int64_t iy = j0; iy <= j1; ++iy) {
        double yc = lo_.y + (static_cast<double>(iy) + 0.5) * h_;
        // point (x, yc): require |(p-c).u| <= hl and |(p-c).w| <= hw
        // (p-c).u = (x - c.x) u.x + (yc - c.y) u.y, linear in x.
        double xa = -std::numeric_limits<double>::max();
        double xb = std::numeric_limits<double>::max();
        const Vec2 axes[2] = {u, w};
        const double half[2] = {hl, r.hw};
        bool empty = false;
        for (int k = 0; k < 2; ++k) {
            double s = axes[k].x, t = axes[k].y * (yc - c.y) - axes[k].x * c.x;
            // s*x + t in [-half, half]
            if (std::abs(s) < 1e-300) {
                if (std::abs(t) > half[k]) empty = true;
                continue;
            }
            double a = (-half[k] - t) / s, b = (half[k] - t) / s;
            if (a > b) std::swap(a, b);
            xa = std::max(xa, a);
            xb = std::min(xb, b);
        }
        if (!empty && xa <= xb) fill_row_interval(iy, xa, xb);
    }
}

double RasterGrid::covered_area() const {
    std::size_t count = 0;
    for (std::uint64_t wd : bits_) count += static_cast<std::size_t>(std::popcount(wd));
    return static_cast<double>(count) * h_ * h_;
}

}  // namespace kakeya
