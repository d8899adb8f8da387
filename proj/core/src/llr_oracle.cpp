#include "osla/llr_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "osla/errors.hpp"
#include "osla/parallel.hpp"
#include "osla/rng.hpp"

namespace osla {

namespace {
constexpr std::size_t kChunk = 1024;
constexpr double kMaxCensoredFraction = 1e-3;
}  // namespace

double WienerConfig::resolved_dt() const {
  if (dt > 0.0) return dt;
  if (!(params.mean_t > 0.0)) {
    throw std::invalid_argument("WienerConfig: mean_t must be positive to derive dt");
  }
  return 1e-3 * params.mean_t;
}

std::size_t WienerConfig::resolved_max_steps() const {
  if (max_steps > 0) return max_steps;
  return static_cast<std::size_t>(std::ceil(64.0 * params.mean_t / resolved_dt()));
}

double FirstPassageResult::censored_fraction() const {
  const std::size_t total = passages.size() + censored;
  return total == 0 ? 0.0 : static_cast<double>(censored) / static_cast<double>(total);
}

double FirstPassageResult::mean_time() const {
  if (passages.empty()) return 0.0;
  double s = 0.0;
  for (const auto& p : passages) s += p.time;
  return s / static_cast<double>(passages.size());
}

double FirstPassageResult::stddev_time() const {
  if (passages.size() < 2) return 0.0;
  const double m = mean_time();
  double s = 0.0;
  for (const auto& p : passages) s += (p.time - m) * (p.time - m);
  return std::sqrt(s / static_cast<double>(passages.size() - 1));
}

double FirstPassageResult::error_rate() const {
  if (passages.empty()) return 0.0;
  std::size_t wrong = 0;
  for (const auto& p : passages) wrong += p.correct ? 0 : 1;
  return static_cast<double>(wrong) / static_cast<double>(passages.size());
}

FirstPassageResult first_passage(const WienerConfig& config, std::size_t n,
                                 std::uint64_t seed, unsigned threads) {
  const double l = config.params.threshold_l;
  const double gamma = config.params.gamma;
  if (!(l > 0.0) || !(gamma > 0.0)) {
    throw std::invalid_argument("first_passage: config must carry positive gamma and L");
  }
  const double dt = config.resolved_dt();
  const std::size_t max_steps = config.resolved_max_steps();
  const double mu = 4.0 * gamma;
  const double sigma2 = 8.0 * gamma;
  const double sigma_sqdt = std::sqrt(sigma2 * dt);
  // Bridge probabilities below e^-40 are ignored; outside this distance from
  // a boundary both are that small.
  const double bridge_gate = std::sqrt(20.0 * sigma2 * dt);

  FirstPassageResult result;
  result.passages.assign(n, Passage{});
  std::vector<std::size_t> censored_per_chunk((n + kChunk - 1) / kChunk, 0);

  parallel_chunks(n, kChunk, threads, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      Rng rng(derive_seed(seed, i));
      double x = 0.0;
      bool done = false;
      for (std::size_t step = 0; step < max_steps && !done; ++step) {
        const double x_next = x + mu * dt + sigma_sqdt * rng.normal();
        const double t0 = static_cast<double>(step) * dt;
        if (x_next >= l) {
          const double theta = (l - x) / (x_next - x);
          result.passages[i] = {t0 + theta * dt, true};
          done = true;
        } else if (x_next <= -l) {
          const double theta = (-l - x) / (x_next - x);
          result.passages[i] = {t0 + theta * dt, false};
          done = true;
        } else {
          // Both endpoints inside: check for an in-step excursion.
          const bool near_up = (l - x) < bridge_gate || (l - x_next) < bridge_gate;
          const bool near_dn = (l + x) < bridge_gate || (l + x_next) < bridge_gate;
          if (near_up || near_dn) {
            const double pu =
                near_up ? std::exp(-2.0 * (l - x) * (l - x_next) / (sigma2 * dt)) : 0.0;
            const double pd =
                near_dn ? std::exp(-2.0 * (l + x) * (l + x_next) / (sigma2 * dt)) : 0.0;
            const double u = rng.uniform();
            if (u < pu) {
              result.passages[i] = {t0 + 0.5 * dt, true};
              done = true;
            } else if (u < pu + pd) {
              result.passages[i] = {t0 + 0.5 * dt, false};
              done = true;
            }
          }
          x = x_next;
        }
      }
      if (!done) {
        result.passages[i] = {-1.0, false};  // censored marker
        ++censored_per_chunk[chunk];
      }
    }
  });

  result.censored = std::accumulate(censored_per_chunk.begin(), censored_per_chunk.end(),
                                    std::size_t{0});
  if (result.censored > 0) {
    std::vector<Passage> kept;
    kept.reserve(n - result.censored);
    for (const auto& p : result.passages) {
      if (p.time >= 0.0) kept.push_back(p);
    }
    result.passages = std::move(kept);
  }
  if (result.censored_fraction() > kMaxCensoredFraction) {
    std::ostringstream os;
    os << "first_passage: censored fraction " << result.censored_fraction()
       << " exceeds " << kMaxCensoredFraction << " (max_steps too small for dt)";
    throw Error(os.str());
  }
  return result;
}

double ks_critical_value(std::size_t n, double alpha) {
  if (n == 0) throw std::invalid_argument("ks_critical_value: n must be positive");
  // K_alpha solves Q_KS(K) = alpha; 1.6276 at alpha = 0.01, 1.3581 at 0.05.
  double k_alpha;
  if (alpha == 0.01) {
    k_alpha = 1.6276;
  } else if (alpha == 0.05) {
    k_alpha = 1.3581;
  } else {
    k_alpha = std::sqrt(-0.5 * std::log(alpha / 2.0));
  }
  return k_alpha / std::sqrt(static_cast<double>(n));
}

GofReport validate_density(const WienerConfig& config, const LengthDistribution& dist,
                           std::size_t n, std::uint64_t seed, unsigned threads) {
  if (n == 0) throw std::invalid_argument("validate_density: insufficient samples (n=0)");
  const auto& dp = dist.params();
  const auto& cp = config.params;
  if (std::abs(dp.gamma - cp.gamma) > 1e-12 * std::max(1.0, dp.gamma) ||
      std::abs(dp.threshold_l - cp.threshold_l) > 1e-12 * std::max(1.0, dp.threshold_l)) {
    throw std::invalid_argument("validate_density: config and distribution parameters differ");
  }

  const FirstPassageResult sim = first_passage(config, n, seed, threads);

  std::vector<double> times;
  times.reserve(sim.passages.size());
  for (const auto& p : sim.passages) times.push_back(p.time);
  std::sort(times.begin(), times.end());

  const std::size_t m = times.size();
  double d = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double f = dist.cdf_fast(times[i]);
    const double hi = static_cast<double>(i + 1) / static_cast<double>(m) - f;
    const double lo = f - static_cast<double>(i) / static_cast<double>(m);
    d = std::max(d, std::max(hi, lo));
  }

  GofReport report;
  report.n = m;
  report.ks_statistic = d;
  report.ks_critical_1pct = ks_critical_value(m, 0.01);
  report.pass = d < report.ks_critical_1pct;
  report.mean_time = sim.mean_time();
  report.predicted_mean = dist.moment(1);
  report.error_rate = sim.error_rate();
  report.predicted_error_rate = 1.0 / (1.0 + std::exp(dp.threshold_l));
  report.censored_fraction = sim.censored_fraction();
  return report;
}

}  // namespace osla
