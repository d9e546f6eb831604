#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace kakeya {

/// A uniformly sampled function of one real variable.
struct SampledFunction {
    double start = 0.0;
    double spacing = 1.0;
    std::vector<std::complex<double>> values;

    std::size_t size() const { return values.size(); }
    double x(std::size_t i) const { return start + static_cast<double>(i) * spacing; }
    double end() const { return values.empty() ? start : x(values.size() - 1); }

    /// Linear interpolation; zero outside the sampled range.
    std::complex<double> at(double x) const;

    double max_abs() const;
    std::complex<double> integral() const;  // trapezoid

    static SampledFunction sample(const std::function<std::complex<double>(double)>& f,
                                  double start, double spacing, std::size_t n);
    static SampledFunction sample_real(const std::function<double(double)>& f, double start,
                                       double spacing, std::size_t n);

    void validate() const;  // finite values, positive spacing
};

/// CSV with columns x, re[, im]; x must be uniformly spaced.
SampledFunction read_sampled_csv(const std::string& path);
void write_sampled_csv(const std::string& path, const SampledFunction& f);

}  // namespace kakeya
