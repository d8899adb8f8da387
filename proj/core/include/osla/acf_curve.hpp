#pragma once

#include <cstddef>
#include <vector>

namespace osla {

// Uniform symmetric angular-frequency grid for the inverse transform.
// n_points must be a power of two >= 4096; spacing is 2*omega_max/n_points.
// The induced output time step is pi/omega_max and the alias window is
// n_points * dt_out = 2*pi/domega.
struct FreqGrid {
  double omega_max = 0.0;
  std::size_t n_points = 0;

  double domega() const { return 2.0 * omega_max / static_cast<double>(n_points); }
  double dt_out() const;
  double window() const { return static_cast<double>(n_points) * dt_out(); }

  // Grid whose alias window covers at least `window` at output step `dt`
  // (n_points rounded up to a power of two).
  static FreqGrid for_window(double window, double dt);

  void validate() const;  // throws std::invalid_argument on violation
};

// Sampled autocorrelation values on an ascending lag grid.
struct AcfCurve {
  enum class Kind { FiniteK, Limit, Empirical };

  std::vector<double> taus;
  std::vector<double> values;
  Kind kind = Kind::Limit;

  // FiniteK / Empirical: observation time
  double t = 0.0;
  // FiniteK: number of symbols K (negative means the K -> infinity limit)
  long long k_symbols = -1;
  // Empirical only
  std::size_t ensemble_size = 0;
  std::vector<double> std_errors;
  bool low_ensemble_warning = false;
};

}  // namespace osla
