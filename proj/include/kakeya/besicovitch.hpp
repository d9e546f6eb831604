#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kakeya/tube.hpp"

namespace kakeya {

struct FCurvePoint {
    int k = 0;
    double delta = 0.0;
    double epsilon = 0.0;
    double error_bound = 0.0;
    bool certificate = false;
};

/// Empirical upper-bound curve for the plane compression functional, with a
/// least-squares fit of epsilon ~ C / |log delta|.
struct FCurve {
    std::vector<FCurvePoint> points;
    double fit_C = 0.0;
    bool fit_done = false;
    std::vector<double> residuals;  // relative, per point
    std::string mode;
};

/// Perron-tree family: 2^k tubes of width delta = 2^-k whose directions span
/// the +-45 degree sector, positioned by recursive bisection-and-translation;
/// translated tubes are verified pairwise disjoint (with a small budgeted
/// axial repair pass).
TubeFamily keich_family(int k, std::pair<double, double> window = {2.0, 3.0});

/// Directions form a maximal delta-separated subset of the sector; positions
/// reuse the Perron-tree layout. No disjointness requirement (the
/// separated-direction variant of the compression functional).
TubeFamily separated_direction_family(double delta);

struct OptimizeOptions {
    double t0 = 0.05;
    double cooling = 0.999;
    double resolution_factor = 8.0;  // raster cell = delta / factor
};

/// Simulated annealing over tube origins/directions minimizing the
/// compression ratio subject to hard translate disjointness. Deterministic
/// given seed; the result never scores worse than its initialization.
TubeFamily optimize_family(int n, double delta, std::uint64_t seed, int iters,
                           const OptimizeOptions& opt = {});

enum class CurveMode { Keich, Optimized, Separated };

struct FCurveOptions {
    double resolution_factor = 8.0;
    std::uint64_t seed = 1;
    int optimizer_iters = 1500;
};

FCurve f_curve(const std::vector<int>& ks, CurveMode mode, const FCurveOptions& opt = {});

}  // namespace kakeya
