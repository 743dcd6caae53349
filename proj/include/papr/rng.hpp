#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace papr {

// splitmix64 step; advances the state and returns the next output word.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Named substreams hanging off a single master seed. Every random decision in
// a run is derived as (master, stream, index), which is what makes the
// parallel and serial schedules produce identical output.
inline constexpr std::uint64_t kStreamSymbolBits = 1;
inline constexpr std::uint64_t kStreamPermutation = 2;
inline constexpr std::uint64_t kStreamNoise = 3;

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                                 std::uint64_t index) {
  std::uint64_t s = master;
  std::uint64_t z = splitmix64(s);
  s ^= stream * 0x9e3779b97f4a7c15ULL;
  z ^= splitmix64(s);
  s ^= index * 0xc2b2ae3d27d4eb4fULL;
  z ^= splitmix64(s);
  return z;
}

// Deterministic generator built on std::mt19937_64 (bit-exact by the
// standard) with hand-rolled distributions, since the std:: distribution
// objects are implementation-defined and would break cross-toolchain
// reproducibility of seeded runs.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t u64() { return gen_(); }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Unbiased integer in [0, n) by rejection.
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      std::uint64_t r = gen_();
      if (r >= threshold) return r % n;
    }
  }

  // Standard-normal pair (Box-Muller).
  std::pair<double, double> gaussian_pair() {
    double u1 = 1.0 - uniform01();  // (0, 1]; keeps log() finite
    double u2 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double th = 2.0 * M_PI * u2;
    return {r * std::cos(th), r * std::sin(th)};
  }

  // Appends `count` uniform bits (values 0/1).
  void fill_bits(std::vector<std::uint8_t>& bits, std::size_t count) {
    std::uint64_t word = 0;
    int avail = 0;
    for (std::size_t i = 0; i < count; ++i) {
      if (avail == 0) {
        word = gen_();
        avail = 64;
      }
      bits.push_back(static_cast<std::uint8_t>(word & 1));
      word >>= 1;
      --avail;
    }
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace papr
