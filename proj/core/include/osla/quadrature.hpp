#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>

namespace osla::quad {

inline constexpr double kDefaultRelTol = 1e-8;

// Adaptive Gauss-Kronrod (15-point) on a finite interval.
template <class F>
double integrate(F&& f, double a, double b, double rel_tol = kDefaultRelTol) {
  if (!(a <= b)) throw std::invalid_argument("quad::integrate: bad interval");
  if (a == b) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      std::forward<F>(f), a, b, 15, rel_tol);
}

// Single non-adaptive 15-point panel; exact to machine precision on short
// smooth segments (cumulative-table construction), with none of the deep
// recursion an adaptive relative tolerance forces on near-zero integrals.
template <class F>
double gk15_panel(F&& f, double a, double b) {
  if (!(a <= b)) throw std::invalid_argument("quad::gk15_panel: bad interval");
  if (a == b) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      std::forward<F>(f), a, b, 0);
}

// Integral of f(s)*exp(-j*w*s)-style oscillatory integrands: the interval is
// pre-split at period multiples so each panel covers a few oscillations at
// most, then each panel is integrated adaptively.
template <class F>
double integrate_oscillatory(F&& f, double a, double b, double omega,
                             double rel_tol = kDefaultRelTol) {
  if (!(a <= b)) throw std::invalid_argument("quad::integrate_oscillatory: bad interval");
  if (a == b) return 0.0;
  const double w = std::abs(omega);
  const double two_pi = 6.283185307179586476925286766559;
  double panel = (w > 0.0) ? 4.0 * two_pi / w : (b - a);
  const std::size_t max_panels = 200000;
  std::size_t n_panels = static_cast<std::size_t>(std::ceil((b - a) / panel));
  if (n_panels < 1) n_panels = 1;
  if (n_panels > max_panels) n_panels = max_panels;
  panel = (b - a) / static_cast<double>(n_panels);

  double total = 0.0;
  for (std::size_t i = 0; i < n_panels; ++i) {
    const double lo = a + panel * static_cast<double>(i);
    const double hi = (i + 1 == n_panels) ? b : lo + panel;
    total += boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, lo, hi, 10, rel_tol);
  }
  return total;
}

// Complex-valued integrand via two real passes.
template <class F>
std::complex<double> integrate_complex(F&& f, double a, double b, double omega,
                                       double rel_tol = kDefaultRelTol) {
  const double re = integrate_oscillatory([&](double s) { return f(s).real(); }, a, b, omega, rel_tol);
  const double im = integrate_oscillatory([&](double s) { return f(s).imag(); }, a, b, omega, rel_tol);
  return {re, im};
}

}  // namespace osla::quad
