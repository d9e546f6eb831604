#pragma once

#include <complex>
#include <vector>

namespace kakeya::fft {

/// In-place complex FFT (FFTW backend). forward is unnormalized; inverse
/// divides by the length so inverse(forward(x)) == x.
void forward(std::vector<std::complex<double>>& data);
void inverse(std::vector<std::complex<double>>& data);

/// 2-D transforms on row-major n0 x n1 data.
void forward2d(std::vector<std::complex<double>>& data, std::size_t n0, std::size_t n1);
void inverse2d(std::vector<std::complex<double>>& data, std::size_t n0, std::size_t n1);

/// Signed frequency index for bin i of an n-point transform.
inline long freq_index(std::size_t i, std::size_t n) {
    return static_cast<long>(i) <= static_cast<long>(n / 2 - (n % 2 == 0 ? 1 : 0))
               ? static_cast<long>(i)
               : static_cast<long>(i) - static_cast<long>(n);
}

}  // namespace kakeya::fft
