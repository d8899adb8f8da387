#pragma once

#include <cstdint>
#include <vector>

#include "osla/stopping_time.hpp"

namespace osla {

// Path-simulation oracle for the receiver's cumulative LLR.
//
// Derivation of the process parameters. The forward channel carries an
// antipodal level +/-sqrt(P) in white noise of two-sided density N0/2:
//
//   r(s) = b*sqrt(P) + n(s),   b in {+1,-1}.
//
// The cumulative log-likelihood ratio of b after observing r up to time t is
//
//   X(t) = ln p({r}|+) / p({r}|-) = (4 sqrt(P)/N0) * Int_0^t r(s) ds.
//
// For b = +1 this is (4P/N0) t + (4 sqrt(P)/N0) * Int n, and Int_0^t n has
// variance (N0/2) t, so with gamma = P/N0:
//
//   dX = mu dt + sigma dW,   mu = 4*gamma,   sigma^2 = 8*gamma.
//
// The same parameters follow from matching the large-L symbol-length density
// to the standard single-boundary first-passage form
// a / sqrt(2 pi sigma^2 t^3) * exp(-(a - mu t)^2 / (2 sigma^2 t)).
//
// Two consequences used as independent test oracles:
//  - exp(-X) is a martingale (theta*mu + theta^2*sigma^2/2 = 0 at theta=-1),
//    so by optional stopping P(hit -L) = 1/(1+e^L);
//  - Dynkin's equation gives E{T} = (L/mu) tanh(L/2) for the +/-L exit.
struct WienerConfig {
  ChannelParams params;
  double dt = 0.0;            // Euler step; 0 selects 1e-3 * mean_t
  std::size_t max_steps = 0;  // safety cap; 0 selects ceil(64 * mean_t / dt)

  double resolved_dt() const;
  std::size_t resolved_max_steps() const;
};

struct Passage {
  double time = 0.0;
  bool correct = false;  // true when the transmitted sign's boundary (+L) is hit
};

struct FirstPassageResult {
  std::vector<Passage> passages;  // completed trials, in trial order
  std::size_t censored = 0;       // trials that exceeded max_steps

  double censored_fraction() const;
  double mean_time() const;
  double stddev_time() const;
  double error_rate() const;
};

// Simulates n first-passage trials of dX = mu dt + sigma dW from 0 with
// absorbing boundaries +/-L. Endpoint crossings are located by linear
// interpolation within the step; excursions that cross and return inside a
// step are caught by the Brownian-bridge crossing probability
// exp(-2(L-x0)(L-x1)/(sigma^2 dt)), without which the discretization bias
// exceeds the Monte Carlo noise at the tolerances used here.
// Trials are partitioned into fixed chunks with per-chunk derived seeds, so
// the output is identical for any thread count.
// Throws Error if the censored fraction exceeds 1e-3.
FirstPassageResult first_passage(const WienerConfig& config, std::size_t n,
                                 std::uint64_t seed, unsigned threads = 0);

struct GofReport {
  std::size_t n = 0;
  double ks_statistic = 0.0;
  double ks_critical_1pct = 0.0;
  bool pass = false;
  double mean_time = 0.0;
  double predicted_mean = 0.0;
  double error_rate = 0.0;
  double predicted_error_rate = 0.0;  // 1/(1+e^L)
  double censored_fraction = 0.0;
};

// Kolmogorov-Smirnov comparison of path-simulated stopping times against the
// analytic cdf, at 1% significance. config and dist must share (gamma, L).
GofReport validate_density(const WienerConfig& config, const LengthDistribution& dist,
                           std::size_t n, std::uint64_t seed, unsigned threads = 0);

// Asymptotic two-sided KS critical value at significance alpha for sample
// size n (K_alpha / sqrt(n); K_0.01 = 1.6276).
double ks_critical_value(std::size_t n, double alpha);

}  // namespace osla
