#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kakeya {

// Raster cell size too coarse for the requested tube width.
struct ResolutionTooCoarse : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A hard constraint (e.g. translate disjointness) was violated.
struct ConstraintViolation : std::runtime_error {
    std::vector<std::pair<int, int>> offending_pairs;

    ConstraintViolation(const std::string& msg, std::vector<std::pair<int, int>> pairs)
        : std::runtime_error(msg), offending_pairs(std::move(pairs)) {}
};

// A construction (Perron tree repair, optimizer seeding, filter bank) could not be completed.
struct ConstructionFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Requested Littlewood-Paley level exceeds the grid's Nyquist band.
struct BandExceeded : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Family does not fit the multiplier grid with the required margin.
struct DomainTooSmall : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Quadrature failed to reach the requested tolerance.
struct AccuracyFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace kakeya
