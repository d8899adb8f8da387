#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "oracles.hpp"
#include "osla/errors.hpp"
#include "osla/stopping_time.hpp"

using osla::LengthDistribution;
using osla::PdfForm;

namespace {

LengthDistribution approx_variant(const LengthDistribution& d) {
  LengthDistribution::Options opts;
  opts.form = PdfForm::LargeLApprox;
  return {d.params().gamma, d.params().threshold_l, opts};
}

}  // namespace

TEST_SUITE("stopping_time") {

TEST_CASE("pdf vanishes on nonpositive time and rejects non-finite input") {
  const auto d = LengthDistribution::calibrated(10.0);
  CHECK(d.pdf(-0.5) == 0.0);
  CHECK(d.pdf(0.0) == 0.0);
  CHECK_THROWS_AS(d.pdf(std::nan("")), std::invalid_argument);
  CHECK_THROWS_AS(d.cdf(std::numeric_limits<double>::infinity()), std::invalid_argument);
}

TEST_CASE("exact series integrates to one at calibrated thresholds") {
  for (double db : {5.0, 10.0, 15.0}) {
    const double gamma = std::pow(10.0, db / 10.0);
    const auto d = LengthDistribution::calibrated(gamma);
    const double mass = oracles::simpson([&](double s) { return d.pdf(s); }, 0.0,
                                         d.upper_support());
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("large-L approximation tracks the exact series near the mode") {
  const auto d = LengthDistribution::calibrated(10.0);  // L = 40 here, well above 20
  REQUIRE(d.params().threshold_l > 20.0);
  const auto a = approx_variant(d);
  double peak = 0.0;
  for (int i = 0; i <= 200; ++i) peak = std::max(peak, d.pdf(0.5 + 0.005 * i));
  double worst = 0.0;
  for (int i = 0; i <= 200; ++i) {
    const double t = 0.5 + 0.005 * i;
    worst = std::max(worst, std::abs(d.pdf(t) - a.pdf(t)));
  }
  CHECK(worst / peak < 1e-2);
}

TEST_CASE("cdf endpoints, monotonicity and consistency with the density") {
  const auto d = LengthDistribution::calibrated(10.0);
  CHECK(d.cdf(0.0) == 0.0);
  CHECK(d.cdf(d.upper_support()) >= 1.0 - 1e-6);
  CHECK(d.cdf(0.8) <= d.cdf(1.2));

  // finite-difference derivative of the cdf against the pdf
  const double h = 1e-4;
  for (int i = 1; i <= 50; ++i) {
    const double t = d.upper_support() * static_cast<double>(i) / 52.0;
    const double fd = (d.cdf(t + h) - d.cdf(t - h)) / (2.0 * h);
    CHECK(std::abs(fd - d.pdf(t)) < 1e-4);
  }
}

TEST_CASE("moments: calibrated mean, degenerate concentration, variance bound") {
  const auto d10 = LengthDistribution::calibrated(10.0);
  CHECK(std::abs(d10.moment(1) - 1.0) <= 1e-6);

  const auto d30 = LengthDistribution::calibrated(1000.0);  // 30 dB
  CHECK(std::abs(d30.moment(2) - 1.0) < 1e-2);

  const auto d5 = LengthDistribution::calibrated(std::pow(10.0, 0.5));
  CHECK(d5.moment(2) >= d5.moment(1) * d5.moment(1));

  CHECK_THROWS_AS(d10.moment(3), osla::UnsupportedError);
  CHECK_THROWS_AS(d10.moment(0), osla::UnsupportedError);
}

TEST_CASE("calibration: large-L mean heuristic, closed-form cross-check, monotone in gamma") {
  const double gamma15 = std::pow(10.0, 1.5);
  const auto p = osla::calibrate_threshold(gamma15, 1.0);
  CHECK(std::abs(p.threshold_l - 4.0 * gamma15) / (4.0 * gamma15) < 0.10);

  // independent closed-form oracle for the two-boundary mean exit time
  CHECK(oracles::mean_exit_time(gamma15, p.threshold_l) ==
        doctest::Approx(1.0).epsilon(1e-6));

  const LengthDistribution check(gamma15, p.threshold_l);
  CHECK(std::abs(check.moment(1) - 1.0) <= 1e-6);

  const auto pa = osla::calibrate_threshold(std::pow(10.0, 0.5), 1.0);
  const auto pb = osla::calibrate_threshold(std::pow(10.0, 1.5), 1.0);
  CHECK(pa.threshold_l < pb.threshold_l);
}

TEST_CASE("calibration failure reports the search window") {
  CHECK_THROWS_AS(osla::calibrate_threshold(-1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(osla::calibrate_threshold(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("series truncation is converged at the default depth") {
  const double gamma = std::pow(10.0, 0.5);
  const auto p = osla::calibrate_threshold(gamma, 1.0);
  LengthDistribution::Options deeper;
  deeper.series_k_max = 14;  // default + 4
  const LengthDistribution d0(gamma, p.threshold_l);
  const LengthDistribution d1(gamma, p.threshold_l, deeper);
  for (double t : {0.3, 0.5, 1.0, 1.5, 2.5, 5.0}) {
    CHECK(std::abs(d0.pdf(t) - d1.pdf(t)) < 1e-10);
  }
}

TEST_CASE("sampling: reproducible, positive, mean-consistent") {
  const auto d = LengthDistribution::calibrated(10.0);
  const auto a = d.sample_lengths(5000, 42);
  const auto b = d.sample_lengths(5000, 42);
  CHECK(a == b);

  CHECK(d.sample_lengths(0, 1).empty());

  const std::size_t n = 100000;
  const auto s = d.sample_lengths(n, 7);
  double mean = 0.0;
  for (double v : s) {
    REQUIRE(v > 0.0);
    mean += v;
  }
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (double v : s) var += (v - mean) * (v - mean);
  const double sd = std::sqrt(var / static_cast<double>(n - 1));
  CHECK(std::abs(mean - 1.0) <= 3.0 * sd / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("sampling matches the cdf (Kolmogorov-Smirnov)") {
  const auto d = LengthDistribution::calibrated(10.0);
  const std::size_t n = 100000;
  auto s = d.sample_lengths(n, 99);
  std::sort(s.begin(), s.end());
  double dist = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = d.cdf_fast(s[i]);
    dist = std::max(dist, std::max(static_cast<double>(i + 1) / n - f,
                                   f - static_cast<double>(i) / n));
  }
  CHECK(dist < oracles::ks_crit_1pct(n));
}

TEST_CASE("sampling requires the exact-series form") {
  const auto d = LengthDistribution::calibrated(10.0);
  const auto a = approx_variant(d);
  CHECK_THROWS_AS(a.sample_lengths(10, 1), std::invalid_argument);
}

}  // TEST_SUITE
