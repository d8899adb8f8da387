#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "osla/acf_curve.hpp"
#include "osla/stopping_time.hpp"

namespace osla {

// Number of symbols K in the pulse train; nullopt is the K -> infinity limit.
using SymbolCount = std::optional<long long>;

// Phi(omega) = Int_0^inf f_T(s) exp(-j omega s) ds. Phi(0) returns exactly 1.
std::complex<double> char_fn(const LengthDistribution& dist, double omega);

// 1 - Phi(omega) evaluated as a single difference-form quadrature
// Int f_T(s) (1 - exp(-j omega s)) ds, which keeps full relative accuracy
// near omega = 0 where Phi approaches 1.
std::complex<double> one_minus_char_fn(const LengthDistribution& dist, double omega);

// Q(omega; tau) = Int_tau^inf f_T(s) (1 - exp(j omega (tau - s))) ds.
std::complex<double> q_fn(const LengthDistribution& dist, double omega, double tau);

// G(omega; tau) = Phi (1 - Phi^K) / (1 - Phi) * Q for finite K, or
// Phi / (1 - Phi) * Q in the K -> infinity limit. omega must be positive;
// the DC value is supplied analytically by callers (acf_dc_limit).
std::complex<double> g_kernel(const LengthDistribution& dist, double omega, double tau,
                              SymbolCount k_symbols);

// Stationary limit R(tau) = (1/E{T}) Int_tau^inf (s - tau) f_T(s) ds,
// extended evenly to negative lags.
double acf_limit(const LengthDistribution& dist, double tau);

// Vectorized stationary limit on an ascending lag grid.
AcfCurve acf_limit_curve(const LengthDistribution& dist, const std::vector<double>& taus,
                         unsigned threads = 0);

// lim_{omega->0} G(omega; tau) for the infinite-K kernel, obtained by
// Richardson extrapolation of g_kernel evaluations at omega = h/2^i. This is
// an independent route to the same quantity as acf_limit and is used to
// cross-check the analytic DC handling.
double acf_dc_limit(const LengthDistribution& dist, double tau, double h = 0.08,
                    int levels = 5);

// Finite-t autocorrelation engine.
//
// R(t, tau) = 1 - F_T(t + tau) + Int_{-inf}^t g(s; tau) ds, with g the
// inverse Fourier transform of G(.; tau). G is sampled on the FreqGrid with
// conjugate symmetry enforced, inverted by FFT, and the step-function factor
// is realized as the running (trapezoidal) integral of g. The DC bin is 0
// for finite K (Q(0)=0 and the geometric sum is finite) and the analytic
// limit value for infinite K.
class FiniteAcf {
 public:
  FiniteAcf(const LengthDistribution& dist, FreqGrid grid, SymbolCount k_symbols);

  // Largest observation time with aliasing below the grid's resolution.
  double max_usable_t() const { return max_usable_t_; }

  // Throws WindowError when t exceeds max_usable_t; requires t > 0, tau >= 0.
  double eval(double t, double tau) const;

  // One inversion per tau, shared across all t values.
  std::vector<double> eval_t_sweep(const std::vector<double>& ts, double tau) const;

  AcfCurve curve(double t, const std::vector<double>& taus, unsigned threads = 0) const;

  const FreqGrid& grid() const { return grid_; }

 private:
  struct TauProfile {
    std::vector<double> cum_g;  // running integral of g over [0, m*dt]
  };
  TauProfile profile(double tau) const;
  double combine(const TauProfile& p, double t, double tau) const;

  LengthDistribution dist_;
  FreqGrid grid_;
  SymbolCount k_;
  std::vector<std::complex<double>> kernel_;  // Phi(1-Phi^K)/(1-Phi) per bin
  double max_usable_t_ = 0.0;
};

// Convenience single-point evaluation (constructs the engine internally).
double acf_finite(const LengthDistribution& dist, const FreqGrid& grid, double t,
                  double tau, SymbolCount k_symbols);

}  // namespace osla
