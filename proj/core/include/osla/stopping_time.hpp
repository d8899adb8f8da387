#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace osla {

// Channel operating point for the variable-symbol-length scheme.
// gamma = P/N0 (SNR ratio per unit time), threshold_l = LLR boundary in
// nats, mean_t = E{T} of the resulting symbol-length distribution.
struct ChannelParams {
  double gamma = 0.0;
  double threshold_l = 0.0;
  double mean_t = 0.0;
};

enum class PdfForm {
  ExactSeries,   // two-boundary first-passage series
  LargeLApprox,  // single-boundary (inverse Gaussian) form, valid for L >> 1
};

// Symbol-length distribution f_T for a drifted-LLR receiver that stops when
// the cumulative LLR first reaches +L or -L.
//
//   f_T(t) = L e^{-gamma t} (e^{-L/2} + e^{L/2}) / sqrt(16 pi gamma t^3)
//            * sum_k (1+4k) exp(-L^2 (1+4k)^2 / (16 gamma t)),
//
// approximated for L >> 1 by the single-boundary density
//
//   f_T(t) ~= L / sqrt(16 pi gamma t^3) * exp(-(L - 4 gamma t)^2 / (16 gamma t)).
//
// All exponentials are evaluated in log space with the sign of (1+4k)
// carried separately; thresholds L of a few thousand (30 dB operating
// points) stay finite.
class LengthDistribution {
 public:
  struct Options {
    PdfForm form = PdfForm::ExactSeries;
    // Minimum symmetric truncation of the series; extended automatically
    // (doubling) until the last added pair of terms contributes < 1e-12
    // relative.
    int series_k_max = 10;
    double quad_tol = 1e-8;
    // Integration cutoff t_max; 0 selects the smallest t with
    // 1 - F_T(t) < 1e-9 by doubling search + bisection.
    double upper_support = 0.0;
  };

  LengthDistribution(double gamma, double threshold_l);
  LengthDistribution(double gamma, double threshold_l, Options opts);

  // Calibrates threshold_l so that E{T} = target_mean (see
  // calibrate_threshold) and returns the distribution at that threshold.
  static LengthDistribution calibrated(double gamma, double target_mean = 1.0);
  static LengthDistribution calibrated(double gamma, double target_mean, Options opts);

  double pdf(double t) const;
  double cdf(double t) const;

  // Interpolated cdf from a precomputed monotone table (~1e-8 absolute);
  // intended for bulk evaluation such as goodness-of-fit scans.
  double cdf_fast(double t) const;

  // E{T^order} by adaptive quadrature; order in {1, 2}.
  double moment(int order) const;

  // n inverse-cdf draws; deterministic for a fixed seed, values in
  // (0, upper_support].
  std::vector<double> sample_lengths(std::size_t n, std::uint64_t seed) const;

  const ChannelParams& params() const { return params_; }
  double upper_support() const { return upper_; }
  double quad_tol() const { return opts_.quad_tol; }
  PdfForm form() const { return opts_.form; }
  const Options& options() const { return opts_; }

 private:
  double pdf_exact_series(double t) const;
  double pdf_large_l(double t) const;
  double tail_mass(double t) const;
  void ensure_sampler() const;

  ChannelParams params_;
  Options opts_;
  double upper_ = 0.0;
  double moment2_ = 0.0;

  struct Sampler;
  mutable std::shared_ptr<const Sampler> sampler_;  // built lazily, immutable once set
};

// Finds threshold_l such that E{T}(gamma, threshold_l) = target_mean within
// 1e-6, by bracketed root finding on L. Throws CalibrationError if the root
// is not bracketed in [1e-3, 64*gamma*target_mean].
ChannelParams calibrate_threshold(double gamma, double target_mean);

}  // namespace osla
