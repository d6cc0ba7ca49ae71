#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>

namespace curesim {

// xoshiro256++ seeded through the splitmix64 finalizer. Simulation code
// derives one independent sub-stream per trial index from a master seed,
// so results do not depend on how trials are scheduled across threads.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t s = seed;
    for (auto& word : state_) {
      s += 0x9E3779B97F4A7C15ull;
      word = mix(s);
    }
  }

  // Counter-based derivation: the sub-stream for (master_seed, index) is a
  // pure function of both, independent of any other stream's consumption.
  static Rng substream(std::uint64_t master_seed, std::uint64_t index) {
    return Rng(mix(master_seed + 0x9E3779B97F4A7C15ull * (index + 1)));
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform draw strictly inside (0,1), 52-bit resolution.
  double uniform_open01() {
    return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
  }

  bool bernoulli(double p) { return uniform_open01() < p; }

  // Exponential waiting time with the given hazard per month; rate 0 never fires.
  double exponential(double rate) {
    const double u = uniform_open01();
    if (rate <= 0.0) return std::numeric_limits<double>::infinity();
    return -std::log(u) / rate;
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_;
};

}  // namespace curesim
