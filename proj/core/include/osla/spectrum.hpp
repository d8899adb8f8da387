#pragma once

#include <iosfwd>
#include <vector>

#include "osla/acf_curve.hpp"

namespace osla {

// Two-sided baseband power spectral density on an ascending frequency grid
// (cycles per unit time).
struct Spectrum {
  std::vector<double> freqs;
  std::vector<double> values;
  double total_power = 0.0;  // trapezoidal integral of values over freqs
};

// S(f) from a stationary autocorrelation curve sampled uniformly on
// tau in [0, tau_max] starting at 0: even extension R(-tau) = R(tau), DFT
// with physical scaling (zero-padded so the output spacing is at most
// freq_resolution), imaginary residue asserted < 1e-6 of the peak, negative
// dust clipped at 1e-9 of the peak (larger negativity is an error).
// Throws TruncationError when |R| at the grid edge exceeds 1e-4.
Spectrum psd_from_acf(const AcfCurve& curve, double freq_resolution);

// Rectangular-pulse BPSK reference: S(f) = T sinc^2(f T) with
// sinc(x) = sin(pi x)/(pi x); S(0) = T.
Spectrum fixed_bpsk_reference(double symbol_time, const std::vector<double>& freqs);

// Stationary autocorrelation of the fixed-length scheme, the T -> const
// limit: R(tau) = max(0, 1 - |tau|/T).
AcfCurve triangle_acf(double symbol_time, const std::vector<double>& taus);

// ITU-R occupied bandwidth: B = f_U - f_L where the power below f_L and the
// power above f_U each equal (beta/2) * total_power, located on the
// cumulative trapezoidal integral with linear interpolation.
double occupied_bandwidth(const Spectrum& s, double beta);

// Width of the centered band containing `fraction` of total power
// (occupied_bandwidth(s, beta) == containment_bandwidth(s, 1 - beta)).
double containment_bandwidth(const Spectrum& s, double fraction);

// CSV with columns f,psd.
void write_csv(const Spectrum& s, std::ostream& os);

}  // namespace osla
