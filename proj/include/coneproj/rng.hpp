#ifndef CONEPROJ_RNG_HPP
#define CONEPROJ_RNG_HPP

#include <cmath>
#include <cstdint>

namespace coneproj {

// SplitMix64 (Steele, Lea, Flood 2014).  Small, fast, and good enough to
// key one independent stream per Monte Carlo trial.
struct SplitMix64 {
  std::uint64_t state = 0;

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
};

// Counter-based stream key: two finalizer rounds over (seed, trial), so
// serial and parallel runs see identical per-trial streams.  This mapping
// is part of the output contract; changing it changes every simulation.
inline std::uint64_t stream_key(std::uint64_t seed, std::uint64_t trial) {
  SplitMix64 g{seed ^ (0x9E3779B97F4A7C15ULL * (trial + 1))};
  g.next();
  return g.next();
}

// Standard Gaussian draws via Box-Muller over 53-bit uniforms.
class GaussianStream {
 public:
  GaussianStream(std::uint64_t seed, std::uint64_t trial)
      : gen_{stream_key(seed, trial)} {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    // u1 in (0, 1] keeps the log finite; u2 in [0, 1).
    const double u1 =
        (static_cast<double>(gen_.next() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = static_cast<double>(gen_.next() >> 11) * 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  void fill(double* out, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) out[i] = next();
  }

 private:
  SplitMix64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace coneproj

#endif  // CONEPROJ_RNG_HPP
