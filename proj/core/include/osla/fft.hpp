#pragma once

#include <complex>
#include <vector>

namespace osla::fft {

// In-place complex transforms backed by FFTW3 (double precision).
// Forward uses exp(-j*2*pi*n*m/N); backward uses exp(+j*2*pi*n*m/N) and is
// unnormalized. Plan creation is serialized internally; execution is
// thread-safe on distinct buffers.
void forward(std::vector<std::complex<double>>& data);
void backward(std::vector<std::complex<double>>& data);

bool is_power_of_two(std::size_t n);
std::size_t next_power_of_two(std::size_t n);

}  // namespace osla::fft
