#pragma once

#include <complex>
#include <span>

namespace friedrichs::detail {

enum class FftSign { forward = -1, backward = +1 };

// Unnormalized in-place DFT: out[m] = sum_k in[k] exp(sign * 2 pi i k m / n).
// Plans are memoized per (n, sign) behind a mutex; execution is reentrant.
void fft_inplace(std::span<std::complex<double>> data, FftSign sign);

} // namespace friedrichs::detail
