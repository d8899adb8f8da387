#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace oslacli {

// Resolved run configuration; per-subcommand defaults are set at option
// registration time.
struct RunConfig {
  bool gamma_db_set = false;
  double gamma_db = 0.0;   // E_b/N0 in dB; equals gamma in dB only when target_mean == 1
  bool gamma_set = false;
  double gamma = 0.0;      // raw SNR ratio P/N0
  double target_mean = 1.0;
  double beta = 0.05;
  long long k_symbols = 100;  // K; negative selects the K -> infinity limit
  std::uint64_t ensemble = 100000;
  std::uint64_t seed = 1;
  double t_obs = 20.0;
  double tau_max = 4.0;
  double tau_step = 0.01;
  double freq_res = 0.005;
  unsigned threads = 0;    // 0 = hardware concurrency
  std::string out_dir = "out";
  std::string mode = "analytic-limit";  // acf: analytic-finite|analytic-limit|simulate|compare
  bool reference = false;  // psd: fixed-symbol-length reference instead of the variable scheme
};

// Flag combinations that cannot be resolved (exit code 1).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Each returns the process exit code: 0 success, 1 usage, 2 numerical.
int cmd_pdf(const RunConfig& cfg);
int cmd_acf(const RunConfig& cfg);
int cmd_psd(const RunConfig& cfg);
int cmd_validate(const RunConfig& cfg);

}  // namespace oslacli
