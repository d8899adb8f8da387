#include "commands.hpp"

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <vector>

#include "osla/autocorr.hpp"
#include "osla/errors.hpp"
#include "osla/io.hpp"
#include "osla/llr_oracle.hpp"
#include "osla/spectrum.hpp"
#include "osla/stopping_time.hpp"
#include "osla/waveform.hpp"

namespace oslacli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

double resolve_gamma(const RunConfig& cfg) {
  if (cfg.gamma_set && cfg.gamma_db_set) {
    throw UsageError("give either --gamma-db or --gamma, not both");
  }
  if (cfg.gamma_set) {
    if (!(cfg.gamma > 0.0)) throw UsageError("--gamma must be positive");
    return cfg.gamma;
  }
  if (!cfg.gamma_db_set) {
    throw UsageError("one of --gamma-db or --gamma is required");
  }
  if (!std::isfinite(cfg.gamma_db)) throw UsageError("--gamma-db must be finite");
  if (cfg.target_mean != 1.0) {
    // gamma_db labels E_b/N0 and equals gamma in dB only through E{T}=1;
    // with another target mean the label would be ambiguous.
    throw UsageError("--gamma-db requires --target-mean 1; use raw --gamma instead");
  }
  return std::pow(10.0, cfg.gamma_db / 10.0);
}

json config_json(const RunConfig& cfg, const std::string& command, double gamma) {
  json j;
  j["command"] = command;
  j["gamma"] = gamma;
  j["gamma_db"] = 10.0 * std::log10(gamma);
  j["target_mean"] = cfg.target_mean;
  j["beta"] = cfg.beta;
  j["k_symbols"] = cfg.k_symbols;
  j["ensemble"] = cfg.ensemble;
  j["seed"] = cfg.seed;
  j["t_obs"] = cfg.t_obs;
  j["tau_max"] = cfg.tau_max;
  j["tau_step"] = cfg.tau_step;
  j["freq_res"] = cfg.freq_res;
  j["threads"] = cfg.threads;
  j["out_dir"] = cfg.out_dir;
  j["mode"] = cfg.mode;
  j["reference"] = cfg.reference;
  return j;
}

void write_json_file(const fs::path& path, const json& j) {
  std::ofstream os(path);
  if (!os) throw osla::Error("cannot open " + path.string());
  os << j.dump(2) << '\n';
}

void write_csv_file(const fs::path& path, const json& config,
                    const std::vector<std::string>& header,
                    const std::vector<std::vector<double>>& columns) {
  std::ofstream os(path);
  if (!os) throw osla::Error("cannot open " + path.string());
  osla::io::write_csv_table(os, config.dump(), header, columns);
}

std::vector<double> uniform_grid(double lo, double hi, double step) {
  if (!(step > 0.0)) throw UsageError("grid step must be positive");
  std::vector<double> g;
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 0.5));
  g.reserve(n + 1);
  for (std::size_t i = 0; i <= n; ++i) g.push_back(lo + step * static_cast<double>(i));
  return g;
}

// Inverse-transform grid sized for the requested K and observation time.
osla::FreqGrid grid_for(const osla::LengthDistribution& dist, osla::SymbolCount k,
                        double t_max) {
  const double upper = dist.upper_support();
  const double mean = dist.moment(1);
  const double var = std::max(0.0, dist.moment(2) - mean * mean);
  double window = t_max + 2.0 * upper;
  if (k) {
    const double pulses = static_cast<double>(*k + 1);
    window = std::max(window,
                      pulses * mean + 8.0 * std::sqrt(pulses * var) + 2.0 * upper);
  }
  return osla::FreqGrid::for_window(1.05 * window + 1.0, 1.0 / 512.0);
}

int run_guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const osla::Error& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace

int cmd_pdf(const RunConfig& cfg) {
  return run_guarded([&] {
    const double gamma = resolve_gamma(cfg);
    const auto dist = osla::LengthDistribution::calibrated(gamma, cfg.target_mean);
    const json config = config_json(cfg, "pdf", gamma);

    fs::create_directories(cfg.out_dir);
    const auto taus = uniform_grid(0.0, dist.upper_support(), cfg.tau_step);
    std::vector<double> pdf_exact(taus.size()), pdf_approx(taus.size()), cdf(taus.size());
    osla::LengthDistribution::Options approx_opts;
    approx_opts.form = osla::PdfForm::LargeLApprox;
    const osla::LengthDistribution approx(gamma, dist.params().threshold_l, approx_opts);
    for (std::size_t i = 0; i < taus.size(); ++i) {
      pdf_exact[i] = dist.pdf(taus[i]);
      pdf_approx[i] = approx.pdf(taus[i]);
      cdf[i] = dist.cdf_fast(taus[i]);
    }
    write_csv_file(fs::path(cfg.out_dir) / "pdf.csv", config, {"t", "pdf", "pdf_large_l"},
                   {taus, pdf_exact, pdf_approx});
    write_csv_file(fs::path(cfg.out_dir) / "cdf.csv", config, {"t", "cdf"}, {taus, cdf});

    json j;
    j["config"] = config;
    j["gamma"] = gamma;
    j["gamma_db"] = 10.0 * std::log10(gamma);
    j["threshold_l"] = dist.params().threshold_l;
    j["mean_t"] = dist.moment(1);
    j["second_moment_t"] = dist.moment(2);
    j["eb_n0"] = gamma * dist.moment(1);
    j["upper_support"] = dist.upper_support();
    write_json_file(fs::path(cfg.out_dir) / "pdf.json", j);
    return 0;
  });
}

int cmd_acf(const RunConfig& cfg) {
  return run_guarded([&] {
    const double gamma = resolve_gamma(cfg);
    const auto dist = osla::LengthDistribution::calibrated(gamma, cfg.target_mean);
    const json config = config_json(cfg, "acf", gamma);
    fs::create_directories(cfg.out_dir);
    const auto taus = uniform_grid(0.0, cfg.tau_max, cfg.tau_step);
    const osla::SymbolCount k =
        cfg.k_symbols < 0 ? osla::SymbolCount{} : osla::SymbolCount{cfg.k_symbols};

    json j;
    j["config"] = config;
    j["threshold_l"] = dist.params().threshold_l;

    if (cfg.mode == "analytic-limit") {
      const auto curve = osla::acf_limit_curve(dist, taus, cfg.threads);
      write_csv_file(fs::path(cfg.out_dir) / "acf_limit.csv", config, {"tau", "r"},
                     {curve.taus, curve.values});
      j["r0"] = curve.values.front();
    } else if (cfg.mode == "analytic-finite") {
      const osla::FiniteAcf engine(dist, grid_for(dist, k, cfg.t_obs), k);
      const auto curve = engine.curve(cfg.t_obs, taus, cfg.threads);
      write_csv_file(fs::path(cfg.out_dir) / "acf_finite.csv", config, {"tau", "r"},
                     {curve.taus, curve.values});
      j["t_obs"] = cfg.t_obs;
      j["max_usable_t"] = engine.max_usable_t();
    } else if (cfg.mode == "simulate") {
      const auto curve = osla::empirical_acf(dist, cfg.t_obs, taus,
                                             static_cast<std::size_t>(cfg.k_symbols + 1),
                                             cfg.ensemble, cfg.seed, cfg.threads);
      write_csv_file(fs::path(cfg.out_dir) / "acf_empirical.csv", config,
                     {"tau", "r", "std_error"},
                     {curve.taus, curve.values, curve.std_errors});
      j["ensemble"] = curve.ensemble_size;
      j["low_ensemble_warning"] = curve.low_ensemble_warning;
    } else if (cfg.mode == "compare") {
      if (cfg.k_symbols < 0) {
        throw UsageError("--mode compare needs a finite --k-symbols for the simulation");
      }
      const osla::FiniteAcf engine(dist, grid_for(dist, k, cfg.t_obs), k);
      const auto analytic = engine.curve(cfg.t_obs, taus, cfg.threads);
      const auto empirical = osla::empirical_acf(
          dist, cfg.t_obs, taus, static_cast<std::size_t>(cfg.k_symbols + 1),
          cfg.ensemble, cfg.seed, cfg.threads);
      std::vector<double> deviation(taus.size());
      double max_dev = 0.0;
      for (std::size_t i = 0; i < taus.size(); ++i) {
        deviation[i] = analytic.values[i] - empirical.values[i];
        max_dev = std::max(max_dev, std::abs(deviation[i]));
      }
      write_csv_file(fs::path(cfg.out_dir) / "acf_compare.csv", config,
                     {"tau", "analytic", "empirical", "deviation", "std_error"},
                     {taus, analytic.values, empirical.values, deviation,
                      empirical.std_errors});
      j["max_abs_deviation"] = max_dev;
      j["ensemble"] = empirical.ensemble_size;
      j["low_ensemble_warning"] = empirical.low_ensemble_warning;
    } else {
      throw UsageError("unknown --mode " + cfg.mode);
    }
    write_json_file(fs::path(cfg.out_dir) / "acf.json", j);
    return 0;
  });
}

int cmd_psd(const RunConfig& cfg) {
  return run_guarded([&] {
    fs::create_directories(cfg.out_dir);
    osla::Spectrum spectrum;
    json j;
    if (cfg.reference) {
      const json config = config_json(cfg, "psd", 0.0);
      // T -> const limit through the same transform pipeline as the
      // variable-length branch, so the occupied-bandwidth measurement is
      // directly comparable (same grid, same folding of the far tails)
      const auto taus = uniform_grid(0.0, cfg.tau_max, cfg.tau_step);
      const auto tri = osla::triangle_acf(cfg.target_mean, taus);
      spectrum = osla::psd_from_acf(tri, cfg.freq_res);
      j["config"] = config;
      j["reference_symbol_time"] = cfg.target_mean;
      j["r0"] = tri.values.front();
      write_csv_file(fs::path(cfg.out_dir) / "psd.csv", config, {"f", "psd"},
                     {spectrum.freqs, spectrum.values});
    } else {
      const double gamma = resolve_gamma(cfg);
      const auto dist = osla::LengthDistribution::calibrated(gamma, cfg.target_mean);
      const json config = config_json(cfg, "psd", gamma);
      const auto taus = uniform_grid(0.0, cfg.tau_max, cfg.tau_step);
      const auto curve = osla::acf_limit_curve(dist, taus, cfg.threads);
      spectrum = osla::psd_from_acf(curve, cfg.freq_res);
      j["config"] = config;
      j["gamma"] = gamma;
      j["gamma_db"] = 10.0 * std::log10(gamma);
      j["threshold_l"] = dist.params().threshold_l;
      j["r0"] = curve.values.front();
      write_csv_file(fs::path(cfg.out_dir) / "psd.csv", config, {"f", "psd"},
                     {spectrum.freqs, spectrum.values});
    }
    j["beta"] = cfg.beta;
    j["obw"] = osla::occupied_bandwidth(spectrum, cfg.beta);
    j["total_power"] = spectrum.total_power;
    // standard containment diagnostics
    j["bw_90"] = osla::containment_bandwidth(spectrum, 0.90);
    j["bw_95"] = osla::containment_bandwidth(spectrum, 0.95);
    j["bw_99"] = osla::containment_bandwidth(spectrum, 0.99);
    write_json_file(fs::path(cfg.out_dir) / "psd.json", j);
    return 0;
  });
}

int cmd_validate(const RunConfig& cfg) {
  return run_guarded([&] {
    if (cfg.ensemble == 0) throw UsageError("--ensemble must be positive");
    const double gamma = resolve_gamma(cfg);
    const auto dist = osla::LengthDistribution::calibrated(gamma, cfg.target_mean);
    const json config = config_json(cfg, "validate", gamma);
    fs::create_directories(cfg.out_dir);

    osla::WienerConfig wiener;
    wiener.params = dist.params();
    const auto report =
        osla::validate_density(wiener, dist, cfg.ensemble, cfg.seed, cfg.threads);

    json j;
    j["config"] = config;
    j["n"] = report.n;
    j["ks_statistic"] = report.ks_statistic;
    j["ks_critical_1pct"] = report.ks_critical_1pct;
    j["ks_pass"] = report.pass;
    j["mean_t_empirical"] = report.mean_time;
    j["mean_t_predicted"] = report.predicted_mean;
    j["error_rate"] = report.error_rate;
    j["predicted_error_rate"] = report.predicted_error_rate;
    j["censored_fraction"] = report.censored_fraction;
    j["threshold_l"] = dist.params().threshold_l;
    write_json_file(fs::path(cfg.out_dir) / "validate.json", j);

    if (!report.pass) {
      std::cerr << "validate: KS statistic " << report.ks_statistic
                << " exceeds the 1% critical value " << report.ks_critical_1pct << '\n';
      return 2;
    }
    return 0;
  });
}

}  // namespace oslacli
