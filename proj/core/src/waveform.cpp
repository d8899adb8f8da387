#include "osla/waveform.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "osla/io.hpp"
#include "osla/parallel.hpp"
#include "osla/rng.hpp"

namespace osla {

namespace {
constexpr std::size_t kChunk = 512;
constexpr std::size_t kMinMeaningfulEnsemble = 100;
}  // namespace

Realization generate(const LengthDistribution& dist, std::size_t k_plus_one,
                     std::uint64_t seed) {
  if (k_plus_one == 0) {
    throw std::invalid_argument("generate: need at least one symbol");
  }
  Realization r;
  r.lengths = dist.sample_lengths(k_plus_one, derive_seed(seed, 0x6c656eULL));
  Rng sign_rng(derive_seed(seed, 0x7369676eULL));
  r.signs.resize(k_plus_one);
  for (auto& s : r.signs) s = sign_rng.sign();
  r.starts.resize(k_plus_one);
  r.starts[0] = 0.0;
  for (std::size_t k = 1; k < k_plus_one; ++k) {
    r.starts[k] = r.starts[k - 1] + r.lengths[k - 1];
  }
  r.span = r.starts.back() + r.lengths.back();
  return r;
}

double eval_waveform(const Realization& r, double t) {
  if (r.starts.empty() || t <= 0.0 || t >= r.span) return 0.0;
  auto it = std::upper_bound(r.starts.begin(), r.starts.end(), t);
  if (it == r.starts.begin()) return 0.0;
  const std::size_t k = static_cast<std::size_t>(it - r.starts.begin()) - 1;
  const double s = r.starts[k];
  if (t > s && t < s + r.lengths[k]) return static_cast<double>(r.signs[k]);
  return 0.0;  // pulse boundary or gap (boundaries are measure zero)
}

AcfCurve empirical_acf(const LengthDistribution& dist, double t,
                       const std::vector<double>& taus, std::size_t k_plus_one,
                       std::size_t n_realizations, std::uint64_t seed, unsigned threads) {
  if (!(t > 0.0)) throw std::invalid_argument("empirical_acf: t must be positive");
  if (n_realizations == 0) {
    throw std::invalid_argument("empirical_acf: need at least one realization");
  }
  for (double tau : taus) {
    if (!(tau >= 0.0)) throw std::invalid_argument("empirical_acf: taus must be >= 0");
  }

  const std::size_t n_lags = taus.size();
  const std::size_t n_chunks = (n_realizations + kChunk - 1) / kChunk;
  // per-chunk integer accumulators: sum of products and count of nonzero
  // products (product^2) per lag
  std::vector<std::vector<std::int64_t>> sums(n_chunks);
  std::vector<std::vector<std::int64_t>> nonzero(n_chunks);

  parallel_chunks(n_realizations, kChunk, threads,
                  [&](std::size_t chunk, std::size_t begin, std::size_t end) {
                    auto& sum = sums[chunk];
                    auto& nz = nonzero[chunk];
                    sum.assign(n_lags, 0);
                    nz.assign(n_lags, 0);
                    for (std::size_t i = begin; i < end; ++i) {
                      const Realization r = generate(dist, k_plus_one, derive_seed(seed, i));
                      const double x0 = eval_waveform(r, t);
                      if (x0 == 0.0) continue;
                      for (std::size_t j = 0; j < n_lags; ++j) {
                        const double x1 = eval_waveform(r, t + taus[j]);
                        const int prod = static_cast<int>(x0 * x1);
                        sum[j] += prod;
                        nz[j] += prod != 0;
                      }
                    }
                  });

  AcfCurve curve;
  curve.kind = AcfCurve::Kind::Empirical;
  curve.t = t;
  curve.taus = taus;
  curve.ensemble_size = n_realizations;
  curve.low_ensemble_warning = n_realizations < kMinMeaningfulEnsemble;
  curve.values.assign(n_lags, 0.0);
  curve.std_errors.assign(n_lags, 0.0);
  const double n = static_cast<double>(n_realizations);
  for (std::size_t j = 0; j < n_lags; ++j) {
    std::int64_t s = 0, q = 0;
    for (std::size_t c = 0; c < n_chunks; ++c) {
      s += sums[c][j];
      q += nonzero[c][j];
    }
    const double mean = static_cast<double>(s) / n;
    const double var = std::max(0.0, static_cast<double>(q) / n - mean * mean);
    curve.values[j] = mean;
    curve.std_errors[j] = std::sqrt(var / n);
  }
  return curve;
}

void write_csv(const Realization& r, std::ostream& os) {
  os << "k,sign,length,start\n";
  for (std::size_t k = 0; k < r.signs.size(); ++k) {
    os << k << ',' << r.signs[k] << ',' << io::format_double(r.lengths[k]) << ','
       << io::format_double(r.starts[k]) << '\n';
  }
}

}  // namespace osla
