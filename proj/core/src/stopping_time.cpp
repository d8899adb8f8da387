#include "osla/stopping_time.hpp"

#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "osla/errors.hpp"
#include "osla/quadrature.hpp"
#include "osla/rng.hpp"

namespace osla {

namespace {

constexpr double kPi = 3.141592653589793238462643383280;
constexpr double kTailTarget = 1e-9;       // upper-support criterion on 1 - F_T
constexpr double kSeriesRelTol = 1e-12;    // stop criterion for extending the series
constexpr int kSeriesKCap = 4096;
constexpr std::size_t kSamplerKnots = 4096;

void check_finite(double t, const char* op) {
  if (!std::isfinite(t)) {
    std::ostringstream os;
    os << op << ": non-finite argument";
    throw std::invalid_argument(os.str());
  }
}

}  // namespace

struct LengthDistribution::Sampler {
  std::vector<double> u;  // cdf values, strictly increasing, ends at 1
  std::vector<double> t;  // knot times, t[i] = F^{-1}(u[i])
};

LengthDistribution::LengthDistribution(double gamma, double threshold_l)
    : LengthDistribution(gamma, threshold_l, Options{}) {}

LengthDistribution::LengthDistribution(double gamma, double threshold_l, Options opts)
    : opts_(opts) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw std::invalid_argument("LengthDistribution: gamma must be positive");
  }
  if (!(threshold_l > 0.0) || !std::isfinite(threshold_l)) {
    throw std::invalid_argument("LengthDistribution: threshold_l must be positive");
  }
  if (opts_.series_k_max < 0) {
    throw std::invalid_argument("LengthDistribution: series_k_max must be >= 0");
  }
  params_.gamma = gamma;
  params_.threshold_l = threshold_l;

  if (opts_.upper_support > 0.0) {
    upper_ = opts_.upper_support;
  } else {
    // Doubling search from 8x the large-L mean (an upper bound on E{T}),
    // then bisection to the smallest t with tail < 1e-9.
    double hi = 8.0 * threshold_l / (4.0 * gamma);
    while (tail_mass(hi) >= kTailTarget) {
      hi *= 2.0;
      if (hi > 1e9) throw InternalError("upper_support search diverged");
    }
    double lo = 0.5 * hi;
    while (lo > 1e-12 * hi && tail_mass(lo) < kTailTarget) {
      hi = lo;
      lo *= 0.5;
    }
    // invariant: tail(lo) >= target > tail(hi)
    for (int i = 0; i < 20 && (hi - lo) > 0.02 * hi; ++i) {
      const double mid = 0.5 * (lo + hi);
      (tail_mass(mid) < kTailTarget ? hi : lo) = mid;
    }
    upper_ = hi;
  }

  params_.mean_t = quad::integrate([this](double s) { return s * pdf(s); }, 0.0, upper_,
                                   opts_.quad_tol);
  moment2_ = quad::integrate([this](double s) { return s * s * pdf(s); }, 0.0, upper_,
                             opts_.quad_tol);
}

LengthDistribution LengthDistribution::calibrated(double gamma, double target_mean) {
  return calibrated(gamma, target_mean, Options{});
}

LengthDistribution LengthDistribution::calibrated(double gamma, double target_mean,
                                                  Options opts) {
  const ChannelParams p = calibrate_threshold(gamma, target_mean);
  return LengthDistribution(p.gamma, p.threshold_l, opts);
}

// Mass of f_T beyond t. The density decays at least like e^{-gamma s}
// (prefactor), so integrating 60/gamma past t captures the tail to ~e^-60
// relative; modest tolerance suffices to compare against the 1e-9 target.
double LengthDistribution::tail_mass(double t) const {
  const double stretch = 60.0 / params_.gamma;
  return quad::integrate([this](double s) { return pdf(s); }, t, t + stretch, 1e-4);
}

double LengthDistribution::pdf(double t) const {
  check_finite(t, "pdf");
  if (t <= 0.0) return 0.0;
  return opts_.form == PdfForm::ExactSeries ? pdf_exact_series(t) : pdf_large_l(t);
}

double LengthDistribution::pdf_large_l(double t) const {
  const double g = params_.gamma;
  const double l = params_.threshold_l;
  const double d = l - 4.0 * g * t;
  const double log_v = std::log(l) - 0.5 * std::log(16.0 * kPi * g * t * t * t) -
                       d * d / (16.0 * g * t);
  return std::exp(log_v);
}

double LengthDistribution::pdf_exact_series(double t) const {
  const double g = params_.gamma;
  const double l = params_.threshold_l;
  const double z = l * l / (16.0 * g * t);
  // log of the k=0 term including the prefactor; the remaining terms are
  // summed relative to it so the sum stays O(1) in magnitude.
  const double log_lead = std::log(l) - g * t + 0.5 * l + std::log1p(std::exp(-l)) -
                          0.5 * std::log(16.0 * kPi * g * t * t * t) - z;
  if (log_lead < -745.0) return 0.0;  // underflows regardless of the series value

  // sum over k of (1+4k) exp(-z((1+4k)^2 - 1)), accumulated outward in
  // pairs (k, -k) until the pair contribution is negligible.
  double sum = 1.0;  // k = 0 term
  const int k_min = std::max(opts_.series_k_max, 1);
  for (int k = 1; k <= kSeriesKCap; ++k) {
    const double mp = 1.0 + 4.0 * k;   // k > 0 image
    const double mm = 1.0 - 4.0 * k;   // k < 0 image (negative sign)
    double pair = 0.0;
    const double ep = -z * (mp * mp - 1.0);
    const double em = -z * (mm * mm - 1.0);
    if (ep > -745.0) pair += mp * std::exp(ep);
    if (em > -745.0) pair += mm * std::exp(em);
    sum += pair;
    if (k >= k_min && std::abs(pair) < kSeriesRelTol * std::abs(sum)) break;
  }
  return std::exp(log_lead) * sum;
}

double LengthDistribution::cdf(double t) const {
  check_finite(t, "cdf");
  if (t <= 0.0) return 0.0;
  const double hi = std::min(t, upper_);
  double v = quad::integrate([this](double s) { return pdf(s); }, 0.0, hi, opts_.quad_tol);
  return std::clamp(v, 0.0, 1.0);
}

double LengthDistribution::moment(int order) const {
  switch (order) {
    case 1:
      return params_.mean_t;
    case 2:
      return moment2_;
    default:
      throw UnsupportedError("moment: order must be 1 or 2");
  }
}

void LengthDistribution::ensure_sampler() const {
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  if (sampler_) return;

  auto s = std::make_shared<Sampler>();
  s->t.resize(kSamplerKnots + 1);
  s->u.resize(kSamplerKnots + 1);
  // Knots dense near 0 where the density rises from zero steeply.
  const double c = 8.0;
  const double denom = std::expm1(c);
  for (std::size_t i = 0; i <= kSamplerKnots; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(kSamplerKnots);
    s->t[i] = upper_ * std::expm1(c * x) / denom;
  }
  s->u[0] = 0.0;
  for (std::size_t i = 1; i <= kSamplerKnots; ++i) {
    const double seg =
        quad::gk15_panel([this](double x) { return pdf(x); }, s->t[i - 1], s->t[i]);
    s->u[i] = s->u[i - 1] + std::max(seg, 0.0);
  }
  const double total = s->u.back();
  if (!(total > 0.0)) throw InternalError("cdf table: zero total mass");
  for (auto& v : s->u) v /= total;
  for (std::size_t i = 1; i <= kSamplerKnots; ++i) {
    if (s->u[i] < s->u[i - 1]) {
      throw InternalError("cdf table: non-monotone cumulative values");
    }
  }
  sampler_ = std::move(s);
}

double LengthDistribution::cdf_fast(double t) const {
  if (!std::isfinite(t)) throw std::invalid_argument("cdf_fast: non-finite argument");
  if (t <= 0.0) return 0.0;
  ensure_sampler();
  const auto& s = *sampler_;
  if (t >= s.t.back()) return 1.0;
  const auto it = std::upper_bound(s.t.begin(), s.t.end(), t);
  const std::size_t i = static_cast<std::size_t>(it - s.t.begin());
  const double t0 = s.t[i - 1], t1 = s.t[i];
  const double w = (t - t0) / (t1 - t0);
  return s.u[i - 1] + w * (s.u[i] - s.u[i - 1]);
}

std::vector<double> LengthDistribution::sample_lengths(std::size_t n,
                                                       std::uint64_t seed) const {
  if (opts_.form != PdfForm::ExactSeries) {
    throw std::invalid_argument("sample_lengths: requires the exact-series form");
  }
  std::vector<double> out(n);
  if (n == 0) return out;
  ensure_sampler();
  const auto& s = *sampler_;
  Rng rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = rng.uniform();
    const auto it = std::upper_bound(s.u.begin(), s.u.end(), u);
    std::size_t j = static_cast<std::size_t>(it - s.u.begin());
    if (j == 0) j = 1;
    if (j > kSamplerKnots) j = kSamplerKnots;
    const double u0 = s.u[j - 1], u1 = s.u[j];
    const double w = (u1 > u0) ? (u - u0) / (u1 - u0) : 0.5;
    double v = s.t[j - 1] + w * (s.t[j] - s.t[j - 1]);
    if (v <= 0.0) v = std::min(0.5 * s.t[1] + 0.5 * s.t[0], upper_);
    if (v <= 0.0) v = std::nextafter(0.0, 1.0);
    out[i] = std::min(v, upper_);
  }
  return out;
}

ChannelParams calibrate_threshold(double gamma, double target_mean) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw std::invalid_argument("calibrate_threshold: gamma must be positive");
  }
  if (!(target_mean > 0.0) || !std::isfinite(target_mean)) {
    throw std::invalid_argument("calibrate_threshold: target_mean must be positive");
  }
  const double l_min = 1e-3;
  const double l_max = 64.0 * gamma * target_mean;  // large-L mean is L/(4 gamma)

  // One generous support for every candidate L in the bracket: the mean at
  // l_max is 16*target_mean and the tail decays like e^{-gamma t}, so this
  // covers all candidates; it skips the per-candidate support search.
  LengthDistribution::Options opts;
  opts.upper_support = 16.0 * target_mean + 80.0 / gamma;
  const auto mean_at = [&](double l) {
    return LengthDistribution(gamma, l, opts).moment(1) - target_mean;
  };

  const double f_lo = mean_at(l_min);
  const double f_hi = mean_at(l_max);
  if (f_lo * f_hi > 0.0) {
    std::ostringstream os;
    os << "calibrate_threshold: E{T}=" << target_mean << " not bracketed for L in ["
       << l_min << ", " << l_max << "] at gamma=" << gamma;
    throw CalibrationError(os.str(), l_min, l_max);
  }

  boost::math::tools::eps_tolerance<double> tol(30);
  std::uintmax_t max_iter = 100;
  const auto r = boost::math::tools::toms748_solve(mean_at, l_min, l_max, f_lo, f_hi,
                                                   tol, max_iter);
  const double l = 0.5 * (r.first + r.second);

  ChannelParams p;
  p.gamma = gamma;
  p.threshold_l = l;
  p.mean_t = target_mean;
  return p;
}

}  // namespace osla
