#include "osla/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace osla::fft {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

void execute(std::vector<std::complex<double>>& data, int sign) {
  if (data.empty()) return;
  auto* raw = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    // The FFTW planner is not thread-safe; execution is.
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(data.size()), raw, raw, sign,
                            FFTW_ESTIMATE | FFTW_UNALIGNED);
  }
  if (!plan) throw std::runtime_error("fftw plan creation failed");
  fftw_execute_dft(plan, raw, raw);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
}

}  // namespace

void forward(std::vector<std::complex<double>>& data) { execute(data, FFTW_FORWARD); }

void backward(std::vector<std::complex<double>>& data) { execute(data, FFTW_BACKWARD); }

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_power_of_two(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace osla::fft
