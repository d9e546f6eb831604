#pragma once

#include <cstdint>
#include <vector>

#include "kakeya/tube.hpp"
#include "kakeya/vec2.hpp"

namespace kakeya {

/// Occupancy bitmask over a uniform grid; cells are counted as covered when
/// their center lies inside a filled rectangle.
class RasterGrid {
  public:
    RasterGrid(Vec2 lo, Vec2 hi, double cell);

    void fill_rect(const OrientedRect& r);
    double covered_area() const;  // popcount * h^2
    std::size_t cell_count() const { return static_cast<std::size_t>(nx_) * ny_; }

    double cell() const { return h_; }
    Vec2 lo() const { return lo_; }
    Vec2 hi() const { return {lo_.x + nx_ * h_, lo_.y + ny_ * h_}; }

  private:
    Vec2 lo_;
    double h_;
    std::int64_t nx_, ny_;
    std::size_t words_per_row_;
    std::vector<std::uint64_t> bits_;

    void fill_row_interval(std::int64_t iy, double xa, double xb);
};

}  // namespace kakeya
