#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace wcop::fft {

using cplx = std::complex<double>;

// In-place unnormalized transforms of length data.size():
//   forward:  X_k = sum_j x_j exp(-2 pi i jk / M)
//   backward: x_j = sum_k X_k exp(+2 pi i jk / M)
// Safe to call concurrently; plans are cached per length.
void forward(std::span<cplx> data);
void backward(std::span<cplx> data);

bool is_power_of_two(std::size_t n);
std::size_t next_power_of_two(std::size_t n);

}  // namespace wcop::fft
