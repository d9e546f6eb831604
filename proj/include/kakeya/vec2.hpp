#pragma once

#include <cmath>

namespace kakeya {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2() = default;
    constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

    constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }

    constexpr double dot(Vec2 o) const { return x * o.x + y * o.y; }
    constexpr double cross(Vec2 o) const { return x * o.y - y * o.x; }
    double norm() const { return std::hypot(x, y); }
    constexpr double norm2() const { return x * x + y * y; }

    // counterclockwise perpendicular
    constexpr Vec2 perp() const { return {-y, x}; }

    Vec2 normalized() const {
        double n = norm();
        return {x / n, y / n};
    }
};

inline constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }

// rotation by angle t applied to v
inline Vec2 rotate(Vec2 v, double t) {
    double c = std::cos(t), s = std::sin(t);
    return {c * v.x - s * v.y, s * v.x + c * v.y};
}

}  // namespace kakeya
