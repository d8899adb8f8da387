#include "osla/autocorr.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

#include "osla/errors.hpp"
#include "osla/fft.hpp"
#include "osla/parallel.hpp"
#include "osla/quadrature.hpp"

namespace osla {

namespace {
constexpr double kPi = 3.141592653589793238462643383280;

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    std::ostringstream os;
    os << what << ": non-finite argument";
    throw std::invalid_argument(os.str());
  }
}
}  // namespace

double FreqGrid::dt_out() const { return kPi / omega_max; }

FreqGrid FreqGrid::for_window(double window, double dt) {
  if (!(window > 0.0) || !(dt > 0.0)) {
    throw std::invalid_argument("FreqGrid::for_window: window and dt must be positive");
  }
  FreqGrid g;
  g.omega_max = kPi / dt;
  g.n_points = fft::next_power_of_two(
      static_cast<std::size_t>(std::ceil(window / dt)));
  if (g.n_points < 4096) g.n_points = 4096;
  return g;
}

void FreqGrid::validate() const {
  if (!(omega_max > 0.0) || !std::isfinite(omega_max)) {
    throw std::invalid_argument("FreqGrid: omega_max must be positive");
  }
  if (!fft::is_power_of_two(n_points) || n_points < 4096) {
    throw std::invalid_argument("FreqGrid: n_points must be a power of two >= 4096");
  }
}

std::complex<double> char_fn(const LengthDistribution& dist, double omega) {
  require_finite(omega, "char_fn");
  if (omega == 0.0) return {1.0, 0.0};  // pdf normalization, by definition
  const double hi = dist.upper_support();
  const double tol = dist.quad_tol();
  const double re = quad::integrate_oscillatory(
      [&](double s) { return dist.pdf(s) * std::cos(omega * s); }, 0.0, hi, omega, tol);
  const double im = -quad::integrate_oscillatory(
      [&](double s) { return dist.pdf(s) * std::sin(omega * s); }, 0.0, hi, omega, tol);
  return {re, im};
}

std::complex<double> one_minus_char_fn(const LengthDistribution& dist, double omega) {
  require_finite(omega, "one_minus_char_fn");
  if (omega == 0.0) return {0.0, 0.0};
  const double hi = dist.upper_support();
  const double tol = dist.quad_tol();
  // 1 - e^{-j w s} = (1 - cos ws) + j sin ws; the difference form keeps
  // relative accuracy when |1 - Phi| is small.
  const double re = quad::integrate_oscillatory(
      [&](double s) {
        const double half = std::sin(0.5 * omega * s);
        return dist.pdf(s) * 2.0 * half * half;  // 1 - cos(ws)
      },
      0.0, hi, omega, tol);
  const double im = quad::integrate_oscillatory(
      [&](double s) { return dist.pdf(s) * std::sin(omega * s); }, 0.0, hi, omega, tol);
  return {re, im};
}

std::complex<double> q_fn(const LengthDistribution& dist, double omega, double tau) {
  require_finite(omega, "q_fn");
  require_finite(tau, "q_fn");
  if (tau < 0.0) {
    throw std::invalid_argument("q_fn: tau must be nonnegative (use symmetry)");
  }
  const double hi = dist.upper_support();
  if (tau >= hi) return {0.0, 0.0};
  if (omega == 0.0) return {0.0, 0.0};
  const double tol = dist.quad_tol();
  // 1 - e^{j w (tau - s)} = (1 - cos(w(s-tau))) + j sin(w(s-tau)) for s >= tau
  const double re = quad::integrate_oscillatory(
      [&](double s) {
        const double half = std::sin(0.5 * omega * (s - tau));
        return dist.pdf(s) * 2.0 * half * half;
      },
      tau, hi, omega, tol);
  const double im = quad::integrate_oscillatory(
      [&](double s) { return dist.pdf(s) * std::sin(omega * (s - tau)); }, tau, hi, omega,
      tol);
  return {re, im};
}

std::complex<double> g_kernel(const LengthDistribution& dist, double omega, double tau,
                              SymbolCount k_symbols) {
  require_finite(omega, "g_kernel");
  if (omega <= 0.0) {
    throw std::invalid_argument(
        "g_kernel: omega must be positive (DC value is the analytic limit)");
  }
  if (k_symbols && *k_symbols < 0) {
    throw std::invalid_argument("g_kernel: K must be nonnegative");
  }
  const std::complex<double> omc = one_minus_char_fn(dist, omega);
  const std::complex<double> phi = 1.0 - omc;
  const std::complex<double> q = q_fn(dist, omega, tau);
  if (std::abs(omc) < 1e-300) {
    throw InternalError("g_kernel: 1 - Phi vanished at positive omega");
  }
  std::complex<double> kernel;
  if (!k_symbols) {
    kernel = phi / omc;
  } else {
    const auto k = static_cast<double>(*k_symbols);
    kernel = phi * (1.0 - std::pow(phi, k)) / omc;
  }
  return kernel * q;
}

double acf_limit(const LengthDistribution& dist, double tau) {
  require_finite(tau, "acf_limit");
  const double a = std::abs(tau);  // R(-tau) = R(tau)
  const double hi = dist.upper_support();
  if (a >= hi) return 0.0;
  const double v = quad::integrate([&](double s) { return (s - a) * dist.pdf(s); }, a, hi,
                                   dist.quad_tol());
  return v / dist.moment(1);
}

AcfCurve acf_limit_curve(const LengthDistribution& dist, const std::vector<double>& taus,
                         unsigned threads) {
  for (std::size_t i = 1; i < taus.size(); ++i) {
    if (!(taus[i] >= taus[i - 1])) {
      throw std::invalid_argument("acf_limit_curve: taus must be ascending");
    }
  }
  AcfCurve curve;
  curve.kind = AcfCurve::Kind::Limit;
  curve.taus = taus;
  curve.values.assign(taus.size(), 0.0);
  parallel_chunks(taus.size(), 64, threads, [&](std::size_t, std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) curve.values[i] = acf_limit(dist, taus[i]);
  });
  return curve;
}

double acf_dc_limit(const LengthDistribution& dist, double tau, double h, int levels) {
  if (!(h > 0.0) || levels < 2) {
    throw std::invalid_argument("acf_dc_limit: need h > 0 and levels >= 2");
  }
  std::vector<double> x(levels);
  std::vector<std::complex<double>> v(levels);
  for (int i = 0; i < levels; ++i) {
    x[i] = h / static_cast<double>(1 << i);
    v[i] = g_kernel(dist, x[i], std::abs(tau), std::nullopt);
  }
  // Neville extrapolation to omega = 0
  for (int k = 1; k < levels; ++k) {
    for (int i = 0; i + k < levels; ++i) {
      v[i] = (x[i + k] * v[i] - x[i] * v[i + 1]) / (x[i + k] - x[i]);
    }
  }
  return v[0].real();
}

FiniteAcf::FiniteAcf(const LengthDistribution& dist, FreqGrid grid, SymbolCount k_symbols)
    : dist_(dist), grid_(grid), k_(k_symbols) {
  grid_.validate();
  if (k_ && *k_ < 0) throw std::invalid_argument("FiniteAcf: K must be nonnegative");

  const std::size_t n = grid_.n_points;
  const double dt = grid_.dt_out();
  const double window = grid_.window();
  const double upper = dist_.upper_support();

  // Alias budget: everything g-related must decay inside the window.
  if (k_) {
    const double mean = dist_.moment(1);
    const double var = std::max(0.0, dist_.moment(2) - mean * mean);
    const double pulses = static_cast<double>(*k_ + 1);
    const double span_hi = pulses * mean + 8.0 * std::sqrt(pulses * var) + 2.0 * upper;
    if (span_hi > window) {
      std::ostringstream os;
      os << "FiniteAcf: window " << window << " cannot hold K=" << *k_
         << " symbols plus margin (" << span_hi << "); increase n_points";
      throw WindowError(os.str(), 0.0);
    }
  }
  max_usable_t_ = window - 2.0 * upper;
  if (max_usable_t_ <= 0.0) {
    throw WindowError("FiniteAcf: window smaller than the decay margin", 0.0);
  }

  std::vector<std::complex<double>> fs(n);
  for (std::size_t m = 0; m < n; ++m) {
    fs[m] = dist_.pdf(static_cast<double>(m) * dt);
  }
  fs[0] *= 0.5;  // trapezoid end weight
  fft::forward(fs);

  kernel_.assign(n / 2 + 1, {0.0, 0.0});
  for (std::size_t i = 1; i <= n / 2; ++i) {
    const std::complex<double> phi = dt * fs[i];
    const std::complex<double> omc = 1.0 - phi;
    if (std::abs(omc) < 1e-14) {
      throw InternalError("FiniteAcf: |1 - Phi| vanished off DC");
    }
    if (k_) {
      const auto k = static_cast<double>(*k_);
      kernel_[i] = phi * (1.0 - std::pow(phi, k)) / omc;
    } else {
      kernel_[i] = phi / omc;
    }
  }
}

FiniteAcf::TauProfile FiniteAcf::profile(double tau) const {
  const std::size_t n = grid_.n_points;
  const double dt = grid_.dt_out();

  std::vector<std::complex<double>> q(n);
  for (std::size_t m = 0; m < n; ++m) {
    q[m] = dist_.pdf(static_cast<double>(m) * dt + tau);
  }
  q[0] *= 0.5;
  fft::forward(q);

  const double one_minus_f = 1.0 - dist_.cdf(tau);

  std::vector<std::complex<double>> g(n, {0.0, 0.0});
  g[0] = k_ ? 0.0 : acf_limit(dist_, tau);  // DC: analytic limit (finite K: K*Q(0)=0)
  for (std::size_t i = 1; i < n / 2; ++i) {
    const std::complex<double> qi = one_minus_f - dt * q[i];
    const std::complex<double> gi = kernel_[i] * qi;
    g[i] = gi;
    g[n - i] = std::conj(gi);  // G(-w) = conj(G(w))
  }
  {
    const std::complex<double> q_ny = one_minus_f - dt * q[n / 2];
    g[n / 2] = (kernel_[n / 2] * q_ny).real();  // Nyquist bin must be real
  }
  fft::backward(g);

  TauProfile p;
  p.cum_g.assign(n, 0.0);
  const double scale = 1.0 / (static_cast<double>(n) * dt);
  double prev = g[0].real() * scale;
  for (std::size_t m = 1; m < n; ++m) {
    const double cur = g[m].real() * scale;
    p.cum_g[m] = p.cum_g[m - 1] + 0.5 * dt * (prev + cur);
    prev = cur;
  }
  return p;
}

double FiniteAcf::combine(const TauProfile& p, double t, double tau) const {
  const double dt = grid_.dt_out();
  const double pos = t / dt;
  const auto idx = static_cast<std::size_t>(pos);
  double cum;
  if (idx + 1 >= p.cum_g.size()) {
    cum = p.cum_g.back();
  } else {
    const double w = pos - static_cast<double>(idx);
    cum = p.cum_g[idx] + w * (p.cum_g[idx + 1] - p.cum_g[idx]);
  }
  const double head = (t + tau < dist_.upper_support()) ? 1.0 - dist_.cdf(t + tau) : 0.0;
  return head + cum;
}

double FiniteAcf::eval(double t, double tau) const {
  require_finite(t, "FiniteAcf::eval");
  require_finite(tau, "FiniteAcf::eval");
  if (!(t > 0.0)) throw std::invalid_argument("FiniteAcf::eval: t must be positive");
  if (tau < 0.0) throw std::invalid_argument("FiniteAcf::eval: tau must be nonnegative");
  if (t > max_usable_t_) {
    std::ostringstream os;
    os << "FiniteAcf::eval: t=" << t << " beyond the alias-free window; max usable t is "
       << max_usable_t_;
    throw WindowError(os.str(), max_usable_t_);
  }
  return combine(profile(tau), t, tau);
}

std::vector<double> FiniteAcf::eval_t_sweep(const std::vector<double>& ts,
                                            double tau) const {
  for (double t : ts) {
    if (!(t > 0.0) || t > max_usable_t_) {
      std::ostringstream os;
      os << "FiniteAcf::eval_t_sweep: t=" << t << " outside (0, " << max_usable_t_ << "]";
      throw WindowError(os.str(), max_usable_t_);
    }
  }
  if (tau < 0.0) throw std::invalid_argument("FiniteAcf: tau must be nonnegative");
  const TauProfile p = profile(tau);
  std::vector<double> out(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) out[i] = combine(p, ts[i], tau);
  return out;
}

AcfCurve FiniteAcf::curve(double t, const std::vector<double>& taus,
                          unsigned threads) const {
  for (std::size_t i = 1; i < taus.size(); ++i) {
    if (!(taus[i] >= taus[i - 1])) {
      throw std::invalid_argument("FiniteAcf::curve: taus must be ascending");
    }
  }
  AcfCurve curve;
  curve.kind = AcfCurve::Kind::FiniteK;
  curve.t = t;
  curve.k_symbols = k_ ? *k_ : -1;
  curve.taus = taus;
  curve.values.assign(taus.size(), 0.0);
  parallel_chunks(taus.size(), 8, threads, [&](std::size_t, std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) curve.values[i] = eval(t, taus[i]);
  });
  return curve;
}

double acf_finite(const LengthDistribution& dist, const FreqGrid& grid, double t,
                  double tau, SymbolCount k_symbols) {
  return FiniteAcf(dist, grid, k_symbols).eval(t, tau);
}

}  // namespace osla
