#include "kakeya/sampled.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace kakeya {

std::complex<double> SampledFunction::at(double xq) const {
    if (values.empty()) return 0.0;
    double t = (xq - start) / spacing;
    if (t < 0.0 || t > static_cast<double>(values.size() - 1)) return 0.0;
    std::size_t i = static_cast<std::size_t>(t);
    if (i + 1 >= values.size()) return values.back();
    double frac = t - static_cast<double>(i);
    return values[i] * (1.0 - frac) + values[i + 1] * frac;
}

double SampledFunction::max_abs() const {
    double m = 0.0;
    for (const auto& v : values) m = std::max(m, std::abs(v));
    return m;
}

std::complex<double> SampledFunction::integral() const {
    if (values.size() < 2) return 0.0;
    std::complex<double> s = 0.5 * (values.front() + values.back());
    for (std::size_t i = 1; i + 1 < values.size(); ++i) s += values[i];
    return s * spacing;
}

SampledFunction SampledFunction::sample(const std::function<std::complex<double>(double)>& f,
                                        double start, double spacing, std::size_t n) {
    SampledFunction out;
    out.start = start;
    out.spacing = spacing;
    out.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.values[i] = f(start + static_cast<double>(i) * spacing);
    return out;
}

SampledFunction SampledFunction::sample_real(const std::function<double(double)>& f, double start,
                                             double spacing, std::size_t n) {
    return sample([&f](double x) { return std::complex<double>(f(x), 0.0); }, start, spacing, n);
}

void SampledFunction::validate() const {
    if (!(spacing > 0.0)) throw std::invalid_argument("SampledFunction: spacing must be positive");
    for (const auto& v : values)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument("SampledFunction: non-finite sample");
}

SampledFunction read_sampled_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    SampledFunction f;
    std::string line;
    std::vector<double> xs;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string cell;
        std::vector<double> row;
        bool numeric = true;
        while (std::getline(ss, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (...) {
                numeric = false;
                break;
            }
        }
        if (!numeric || row.empty()) continue;  // header or comment
        xs.push_back(row[0]);
        double re = row.size() > 1 ? row[1] : 0.0;
        double im = row.size() > 2 ? row[2] : 0.0;
        f.values.emplace_back(re, im);
    }
    if (xs.size() < 2) throw std::runtime_error("CSV " + path + ": need at least two samples");
    f.start = xs.front();
    f.spacing = (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
    for (std::size_t i = 0; i < xs.size(); ++i)
        if (std::abs(xs[i] - (f.start + f.spacing * static_cast<double>(i))) > 1e-9 * (1.0 + std::abs(xs[i])))
            throw std::runtime_error("CSV " + path + ": x column is not uniformly spaced");
    f.validate();
    return f;
}

void write_sampled_csv(const std::string& path, const SampledFunction& f) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "x,re,im\n";
    out.precision(17);
    for (std::size_t i = 0; i < f.size(); ++i)
        out << f.x(i) << ',' << f.values[i].real() << ',' << f.values[i].imag() << '\n';
}

}  // namespace kakeya
