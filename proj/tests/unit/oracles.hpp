#pragma once

// Test-only oracles, independent of the library's numerical paths.

#include <cmath>
#include <cstddef>
#include <functional>

namespace oracles {

// Composite Simpson on a fixed fine grid; independent of the adaptive
// Gauss-Kronrod machinery used by the implementation.
inline double simpson(const std::function<double(double)>& f, double a, double b,
                      std::size_t n_intervals = 200000) {
  if (n_intervals % 2 != 0) ++n_intervals;
  const double h = (b - a) / static_cast<double>(n_intervals);
  double acc = f(a) + f(b);
  for (std::size_t i = 1; i < n_intervals; ++i) {
    acc += f(a + h * static_cast<double>(i)) * (i % 2 ? 4.0 : 2.0);
  }
  return acc * h / 3.0;
}

// Closed-form mean exit time of a +/-L boundary pair for drift 4*gamma,
// variance 8*gamma (Dynkin's equation): E{T} = (L / 4 gamma) tanh(L/2).
inline double mean_exit_time(double gamma, double l) {
  return l * std::tanh(0.5 * l) / (4.0 * gamma);
}

// Optional-stopping error probability: P(hit -L) = 1 / (1 + e^L).
inline double wrong_boundary_probability(double l) { return 1.0 / (1.0 + std::exp(l)); }

// Two-sided KS critical value (asymptotic), K_0.01 = 1.6276.
inline double ks_crit_1pct(std::size_t n) {
  return 1.6276 / std::sqrt(static_cast<double>(n));
}

}  // namespace oracles
