#include "kakeya/fftutil.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace kakeya::fft {

namespace {

// One cached in-place plan (and its aligned buffer) per shape and direction.
// FFTW planning and execution on a shared buffer are serialized; transforms
// are cheap to route through a single lock given their size here.
struct PlanEntry {
    fftw_plan plan = nullptr;
    fftw_complex* buf = nullptr;
    std::size_t len = 0;
};

std::mutex g_mutex;
std::map<std::tuple<std::size_t, std::size_t, int>, PlanEntry> g_plans;

PlanEntry& get_plan(std::size_t n0, std::size_t n1, int sign) {
    auto key = std::make_tuple(n0, n1, sign);
    auto it = g_plans.find(key);
    if (it != g_plans.end()) return it->second;
    PlanEntry e;
    e.len = n0 * n1;
    e.buf = fftw_alloc_complex(e.len);
    if (!e.buf) throw std::bad_alloc();
    if (n0 == 1)
        e.plan = fftw_plan_dft_1d(static_cast<int>(n1), e.buf, e.buf, sign, FFTW_ESTIMATE);
    else
        e.plan = fftw_plan_dft_2d(static_cast<int>(n0), static_cast<int>(n1), e.buf, e.buf, sign,
                                  FFTW_ESTIMATE);
    if (!e.plan) throw std::runtime_error("fft: planning failed");
    return g_plans.emplace(key, e).first->second;
}

void execute(std::vector<std::complex<double>>& data, std::size_t n0, std::size_t n1, int sign) {
    if (data.size() != n0 * n1) throw std::invalid_argument("fft: size mismatch");
    std::lock_guard<std::mutex> lock(g_mutex);
    PlanEntry& e = get_plan(n0, n1, sign);
    std::memcpy(e.buf, data.data(), sizeof(fftw_complex) * e.len);
    fftw_execute(e.plan);
    std::memcpy(data.data(), e.buf, sizeof(fftw_complex) * e.len);
}

}  // namespace

void forward(std::vector<std::complex<double>>& data) { execute(data, 1, data.size(), FFTW_FORWARD); }

void inverse(std::vector<std::complex<double>>& data) {
    execute(data, 1, data.size(), FFTW_BACKWARD);
    double inv = 1.0 / static_cast<double>(data.size());
    for (auto& v : data) v *= inv;
}

void forward2d(std::vector<std::complex<double>>& data, std::size_t n0, std::size_t n1) {
    execute(data, n0, n1, FFTW_FORWARD);
}

void inverse2d(std::vector<std::complex<double>>& data, std::size_t n0, std::size_t n1) {
    execute(data, n0, n1, FFTW_BACKWARD);
    double inv = 1.0 / static_cast<double>(data.size());
    for (auto& v : data) v *= inv;
}

}  // namespace kakeya::fft
