#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "osla/acf_curve.hpp"
#include "osla/stopping_time.hpp"

namespace osla {

// One sampled pulse train: antipodal signs B_k, random durations T_k and the
// start-time recursion S_0 = 0, S_k = S_{k-1} + T_{k-1}.
struct Realization {
  std::vector<int> signs;      // +1 / -1
  std::vector<double> lengths;
  std::vector<double> starts;
  double span = 0.0;           // = starts.back() + lengths.back()
};

// k_plus_one pulses; signs i.i.d. uniform +/-1, lengths via
// LengthDistribution::sample_lengths. Deterministic for a fixed seed.
Realization generate(const LengthDistribution& dist, std::size_t k_plus_one,
                     std::uint64_t seed);

// X(t): the sign of the pulse strictly containing t, 0 outside [0, span]
// and at pulse boundaries (open-interval convention, measure zero).
double eval_waveform(const Realization& r, double t);

// Ensemble average of X(t+tau) X(t) over n_realizations independent pulse
// trains, with per-lag standard errors (the product takes values in
// {-1, 0, +1}). Accumulation is integer-valued per fixed-size chunk, so the
// result is bit-identical for any thread count.
AcfCurve empirical_acf(const LengthDistribution& dist, double t,
                       const std::vector<double>& taus, std::size_t k_plus_one,
                       std::size_t n_realizations, std::uint64_t seed,
                       unsigned threads = 0);

// CSV with columns k,sign,length,start.
void write_csv(const Realization& r, std::ostream& os);

}  // namespace osla
