#pragma once

#include <map>
#include <string>
#include <vector>

namespace kakeya {

/// A named bound value with its parameters, the chain of inequalities it came
/// from, and a numeric error estimate. `flags` carries labels such as
/// INFINITE, EXTRAPOLATED, DEGENERATE, CERTIFICATE_PASSED.
struct BoundReport {
    std::string name;
    double value = 0.0;
    std::map<std::string, double> params;
    std::vector<std::string> provenance;
    double error_estimate = 0.0;
    std::vector<std::string> flags;
    std::string verdict;  // optional categorical outcome (CONVERGES, CONSISTENT_B0, ...)

    bool has_flag(const std::string& f) const {
        for (const auto& g : flags)
            if (g == f) return true;
        return false;
    }
    void set_param(const std::string& k, double v) { params[k] = v; }
    double param(const std::string& k, double fallback = 0.0) const {
        auto it = params.find(k);
        return it == params.end() ? fallback : it->second;
    }
};

}  // namespace kakeya
