#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace osla {

// splitmix64 step; used to derive independent stream seeds from a user seed
// and a stream index so parallel workers are reproducible regardless of
// scheduling.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed ^ splitmix64(stream + 0x51ed2701ULL));
}

// mt19937_64 with explicit uniform/normal transforms. The engine output is
// fully specified by the standard; the transforms below avoid the
// implementation-defined std distributions so sequences are stable.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // uniform in [0,1) with 53-bit resolution
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // uniform in (0,1], safe for log()
  double uniform_pos() { return 1.0 - uniform(); }

  // standard normal via Box-Muller, second draw cached
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform_pos();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  // fair sign in {-1,+1}
  int sign() { return (eng_() & 1u) ? 1 : -1; }

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace osla
