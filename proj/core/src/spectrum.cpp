#include "osla/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "osla/errors.hpp"
#include "osla/fft.hpp"
#include "osla/io.hpp"

namespace osla {

namespace {

constexpr double kPi = 3.141592653589793238462643383280;
constexpr double kEdgeErrorLevel = 1e-4;
constexpr double kNegativeDustLevel = 1e-9;  // relative to the peak

double trapz(const std::vector<double>& x, const std::vector<double>& y) {
  double acc = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    acc += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  }
  return acc;
}

}  // namespace

Spectrum psd_from_acf(const AcfCurve& curve, double freq_resolution) {
  if (curve.kind != AcfCurve::Kind::Limit) {
    throw std::invalid_argument("psd_from_acf: curve must be a stationary (Limit) curve");
  }
  if (!(freq_resolution > 0.0)) {
    throw std::invalid_argument("psd_from_acf: freq_resolution must be positive");
  }
  const auto& taus = curve.taus;
  const auto& r = curve.values;
  if (taus.size() < 16) {
    throw std::invalid_argument("psd_from_acf: curve too short");
  }
  if (std::abs(taus.front()) > 1e-12) {
    throw std::invalid_argument("psd_from_acf: tau grid must start at 0");
  }
  const double dtau = taus[1] - taus[0];
  for (std::size_t i = 1; i < taus.size(); ++i) {
    if (std::abs((taus[i] - taus[i - 1]) - dtau) > 1e-9 * dtau) {
      throw std::invalid_argument("psd_from_acf: tau grid must be uniform");
    }
  }
  if (std::abs(r.back()) > kEdgeErrorLevel) {
    std::ostringstream os;
    os << "psd_from_acf: |R| = " << std::abs(r.back()) << " at the grid edge tau="
       << taus.back() << "; extend the tau grid until the curve has decayed";
    throw TruncationError(os.str());
  }

  // even extension, zero-padded so the DFT bin spacing is <= freq_resolution
  const std::size_t n = taus.size();
  std::size_t len = fft::next_power_of_two(
      std::max(2 * (n - 1), static_cast<std::size_t>(std::ceil(1.0 / (freq_resolution * dtau)))));
  std::vector<std::complex<double>> buf(len, {0.0, 0.0});
  for (std::size_t m = 0; m < n; ++m) buf[m] = r[m];
  for (std::size_t m = 1; m <= n - 1; ++m) buf[len - m] = r[m];
  fft::forward(buf);

  const std::size_t half = len / 2;
  std::vector<double> vals(half + 1);
  double peak = 0.0, max_imag = 0.0;
  for (std::size_t k = 0; k <= half; ++k) {
    vals[k] = dtau * buf[k].real();
    peak = std::max(peak, std::abs(vals[k]));
    max_imag = std::max(max_imag, std::abs(buf[k].imag()) * dtau);
  }
  if (max_imag > 1e-6 * peak) {
    throw InternalError("psd_from_acf: imaginary residue above 1e-6 of the peak");
  }
  double most_negative = 0.0;
  for (auto& v : vals) most_negative = std::min(most_negative, v);
  if (most_negative < -kNegativeDustLevel * peak) {
    std::ostringstream os;
    os << "psd_from_acf: negative spectral value " << most_negative
       << " exceeds the numerical-dust threshold";
    throw InternalError(os.str());
  }
  for (auto& v : vals) v = std::max(v, 0.0);

  // assemble the two-sided axis
  const double df = 1.0 / (static_cast<double>(len) * dtau);
  Spectrum s;
  s.freqs.resize(2 * half + 1);
  s.values.resize(2 * half + 1);
  for (std::size_t k = 0; k <= 2 * half; ++k) {
    const auto i = static_cast<long long>(k) - static_cast<long long>(half);
    s.freqs[k] = static_cast<double>(i) * df;
    s.values[k] = vals[static_cast<std::size_t>(std::llabs(i))];
  }
  s.total_power = trapz(s.freqs, s.values);
  return s;
}

Spectrum fixed_bpsk_reference(double symbol_time, const std::vector<double>& freqs) {
  if (!(symbol_time > 0.0)) {
    throw std::invalid_argument("fixed_bpsk_reference: symbol_time must be positive");
  }
  Spectrum s;
  s.freqs = freqs;
  s.values.resize(freqs.size());
  for (std::size_t i = 0; i < freqs.size(); ++i) {
    const double x = freqs[i] * symbol_time;
    if (x == 0.0) {
      s.values[i] = symbol_time;
    } else {
      const double sc = std::sin(kPi * x) / (kPi * x);
      s.values[i] = symbol_time * sc * sc;
    }
  }
  s.total_power = trapz(s.freqs, s.values);
  return s;
}

AcfCurve triangle_acf(double symbol_time, const std::vector<double>& taus) {
  if (!(symbol_time > 0.0)) {
    throw std::invalid_argument("triangle_acf: symbol_time must be positive");
  }
  AcfCurve curve;
  curve.kind = AcfCurve::Kind::Limit;
  curve.taus = taus;
  curve.values.resize(taus.size());
  for (std::size_t i = 0; i < taus.size(); ++i) {
    curve.values[i] = std::max(0.0, 1.0 - std::abs(taus[i]) / symbol_time);
  }
  return curve;
}

double containment_bandwidth(const Spectrum& s, double fraction) {
  if (!(fraction > 0.0) || !(fraction < 1.0)) {
    throw std::invalid_argument("containment_bandwidth: fraction must be in (0,1)");
  }
  return occupied_bandwidth(s, 1.0 - fraction);
}

double occupied_bandwidth(const Spectrum& s, double beta) {
  if (!(beta > 0.0) || !(beta < 1.0)) {
    throw std::invalid_argument("occupied_bandwidth: beta must be in (0,1)");
  }
  if (s.freqs.size() < 3 || s.freqs.size() != s.values.size()) {
    throw std::invalid_argument("occupied_bandwidth: malformed spectrum");
  }
  if (!(s.total_power > 0.0)) {
    throw std::invalid_argument("occupied_bandwidth: total power must be positive");
  }

  std::vector<double> cum(s.freqs.size(), 0.0);
  for (std::size_t i = 1; i < s.freqs.size(); ++i) {
    cum[i] = cum[i - 1] +
             0.5 * (s.freqs[i] - s.freqs[i - 1]) * (s.values[i] + s.values[i - 1]);
  }
  const double total = cum.back();

  const double half_beta_power = 0.5 * beta * total;
  // A quantile landing inside an edge segment means the grid does not
  // resolve (or reach) the excluded band.
  if (cum[1] >= half_beta_power || total - cum[cum.size() - 2] >= half_beta_power) {
    throw ResolutionError(
        "occupied_bandwidth: beta/2 quantile falls in an edge segment; refine or "
        "extend the frequency grid");
  }

  const auto quantile = [&](double target) {
    const auto it = std::lower_bound(cum.begin(), cum.end(), target);
    const std::size_t i = static_cast<std::size_t>(it - cum.begin());
    if (i == 0) return s.freqs.front();
    const double c0 = cum[i - 1], c1 = cum[i];
    const double w = (c1 > c0) ? (target - c0) / (c1 - c0) : 1.0;
    return s.freqs[i - 1] + w * (s.freqs[i] - s.freqs[i - 1]);
  };

  const double f_lo = quantile(half_beta_power);
  const double f_hi = quantile(total - half_beta_power);
  return f_hi - f_lo;
}

void write_csv(const Spectrum& s, std::ostream& os) {
  io::write_csv_table(os, "", {"f", "psd"}, {s.freqs, s.values});
}

}  // namespace osla
