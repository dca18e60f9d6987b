#pragma once

#include <cstdint>

namespace gmcc {

/// SplitMix64 (Steele, Lea & Flood 2014): the output is a bijective hash of
/// a 64-bit counter that advances by a fixed odd increment, so the generator
/// is counter-based. Jumping ahead n draws is a single multiply-add, and
/// independent streams are obtained by hashing (base_seed, stream_index)
/// into the starting counter. Passes BigCrush; more than adequate for the
/// Monte Carlo experiments here.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform on the open interval (0, 1); 53-bit resolution, never returns
  /// an exact endpoint (inverse-CDF transforms stay finite).
  double next_unit_open() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Advance the counter by n draws without generating them.
  void jump(std::uint64_t n) { state_ += n * 0x9E3779B97F4A7C15ULL; }

 private:
  std::uint64_t state_;
};

/// Addressable random stream: identical (base_seed, stream_index) pairs
/// reproduce identical sequences across runs and across any parallel
/// schedule. Streams are decorrelated by double-hashing the pair into the
/// SplitMix64 starting counter.
struct SeededStream {
  std::uint64_t base_seed = 0;
  std::uint64_t stream_index = 0;

  SplitMix64 make_rng() const;
};

/// Inverse CDF of the standard normal distribution, algorithm AS 241
/// (Wichura's PPND16). Absolute error below 1e-15 over (0, 1); used so that
/// Gaussian sampling consumes exactly one uniform per draw.
double standard_normal_icdf(double p);

}  // namespace gmcc
