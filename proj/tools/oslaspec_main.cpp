// oslaspec: autocorrelation, spectrum and occupied-bandwidth experiments for
// variable-symbol-length feedback signaling.
//
//   oslaspec pdf      --gamma-db 10 --out out/pdf10
//   oslaspec acf      --gamma-db 10 --mode compare --k-symbols 100 --ensemble 100000
//   oslaspec psd      --gamma-db 5  --beta 0.05
//   oslaspec psd      --reference
//   oslaspec validate --gamma-db 10 --ensemble 50000

#include <CLI11.hpp>

#include <cstdio>

#include "commands.hpp"

namespace {

void add_common(CLI::App* cmd, oslacli::RunConfig& cfg) {
  cmd->add_option("--gamma-db", cfg.gamma_db, "E_b/N0 in dB (equals gamma in dB for E{T}=1)")
      ->check(CLI::Number)
      ->each([&cfg](const std::string&) { cfg.gamma_db_set = true; });
  cmd->add_option("--gamma", cfg.gamma, "raw SNR ratio P/N0 (use with --target-mean != 1)")
      ->each([&cfg](const std::string&) { cfg.gamma_set = true; });
  cmd->add_option("--target-mean", cfg.target_mean, "target E{T} for threshold calibration")
      ->capture_default_str();
  cmd->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  cmd->add_option("--threads", cfg.threads, "worker cap (0 = hardware)")
      ->capture_default_str();
  cmd->add_option("--out", cfg.out_dir, "output directory")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"variable-symbol-length signal analysis"};
  app.require_subcommand(1);

  oslacli::RunConfig pdf_cfg, acf_cfg, psd_cfg, val_cfg;

  auto* pdf = app.add_subcommand("pdf", "tabulate the symbol-length pdf/cdf");
  add_common(pdf, pdf_cfg);
  pdf->add_option("--tau-step", pdf_cfg.tau_step, "table step")->capture_default_str();

  auto* acf = app.add_subcommand("acf", "autocorrelation curves");
  add_common(acf, acf_cfg);
  acf->add_option("--mode", acf_cfg.mode,
                  "analytic-finite|analytic-limit|simulate|compare")
      ->capture_default_str();
  acf->add_option("--k-symbols", acf_cfg.k_symbols, "K (negative = infinite)")
      ->capture_default_str();
  acf->add_option("--ensemble", acf_cfg.ensemble, "simulation realizations")
      ->capture_default_str();
  acf->add_option("--t-obs", acf_cfg.t_obs, "observation time t")->capture_default_str();
  acf->add_option("--tau-max", acf_cfg.tau_max, "largest lag")->capture_default_str();
  acf->add_option("--tau-step", acf_cfg.tau_step, "lag step")->capture_default_str();

  auto* psd = app.add_subcommand("psd", "power spectral density and occupied bandwidth");
  psd_cfg.tau_max = 40.0;
  psd_cfg.tau_step = 0.005;
  add_common(psd, psd_cfg);
  psd->add_option("--beta", psd_cfg.beta, "excluded power fraction")->capture_default_str();
  psd->add_option("--tau-max", psd_cfg.tau_max, "autocorrelation extent")
      ->capture_default_str();
  psd->add_option("--tau-step", psd_cfg.tau_step, "autocorrelation step")
      ->capture_default_str();
  psd->add_option("--freq-res", psd_cfg.freq_res, "frequency resolution")
      ->capture_default_str();
  psd->add_flag("--reference", psd_cfg.reference,
                "fixed-symbol-length BPSK reference instead of the variable scheme");

  auto* val = app.add_subcommand("validate", "path-simulation cross-checks");
  val_cfg.ensemble = 50000;
  add_common(val, val_cfg);
  val->add_option("--ensemble", val_cfg.ensemble, "first-passage trials")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 1;
  }

  if (pdf->parsed()) return oslacli::cmd_pdf(pdf_cfg);
  if (acf->parsed()) return oslacli::cmd_acf(acf_cfg);
  if (psd->parsed()) return oslacli::cmd_psd(psd_cfg);
  if (val->parsed()) return oslacli::cmd_validate(val_cfg);
  return 1;
}
