#pragma once

#include <cmath>
#include <cstdint>

namespace ruinadjust {

// SplitMix64 generator (Steele, Lea & Vigna). Used instead of <random>
// engines because its output function is fully specified, so a seeded run
// reproduces bit-for-bit on any platform and compiler.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform draw on [0, 1) with 53 random bits.
  double next_uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Exponential(rate) draw by inverse CDF; log1p keeps precision for small u.
  double next_exponential(double rate) { return -std::log1p(-next_uniform()) / rate; }

 private:
  std::uint64_t state_;
};

// Seed for an independent replicate stream: the (index+1)-th output of a
// SplitMix64 sequence seeded with `master`. This is the documented splitting
// rule; distinct indices give unrelated, reproducible streams.
inline std::uint64_t split_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace ruinadjust
