#pragma once

#include <stdexcept>
#include <string>

namespace osla {

// Base for all numerical/domain failures raised by this library.
// Argument validation uses std::invalid_argument directly.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Root bracketing for the threshold calibration failed.
class CalibrationError : public Error {
 public:
  CalibrationError(const std::string& msg, double l_min, double l_max)
      : Error(msg), l_min(l_min), l_max(l_max) {}
  double l_min;
  double l_max;
};

// Requested observation time exceeds the alias-free window of the
// inverse-transform grid.
class WindowError : public Error {
 public:
  WindowError(const std::string& msg, double max_usable_t)
      : Error(msg), max_usable_t(max_usable_t) {}
  double max_usable_t;
};

// Autocorrelation grid does not reach far enough for a spectrum transform.
class TruncationError : public Error {
 public:
  using Error::Error;
};

// Frequency grid too coarse to bracket a power quantile.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

// Unsupported parameter (e.g. moment order outside {1,2}).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

// Internal consistency violated (e.g. non-monotone inverse-cdf table).
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace osla
