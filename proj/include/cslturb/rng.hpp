#ifndef CSLTURB_RNG_HPP
#define CSLTURB_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace cslturb {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;

// splitmix64 finalizer: bijective avalanche mix of a 64-bit word.
inline std::uint64_t splitmix64(std::uint64_t z) {
  z += kGoldenGamma;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Counter-based stream splitting: (master_seed, stream_index) -> substream
// seed. Streams with distinct indices are statistically independent, so
// per-trajectory and per-walker generators can be created in any order
// (and on any thread) without changing the numbers they produce.
inline std::uint64_t split_seed(std::uint64_t master_seed, std::uint64_t stream_index) {
  return splitmix64(master_seed ^ (kGoldenGamma * (stream_index + 1)));
}

// Stateless uniform in (0,1): one double per (key, counter) pair.
// Used where per-entity engines would be wasteful (walker jumps).
inline double counter_uniform(std::uint64_t key, std::uint64_t counter) {
  const std::uint64_t h = splitmix64(key ^ splitmix64(counter));
  return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
}

// Sequential generator for one trajectory / one field. Normal deviates are
// produced by a fixed Box-Muller recipe (two uniforms per deviate, no cached
// spare) so the draw sequence is platform-independent and easy to reason
// about when two integration schemes must consume identical streams.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}
  RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
      : engine_(split_seed(master_seed, stream_index)) {}

  std::uint64_t raw() { return engine_(); }

  double uniform() {  // strictly inside (0,1)
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

 private:
  static constexpr double kPi = 3.14159265358979323846;
  std::mt19937_64 engine_;
};

}  // namespace cslturb

#endif
