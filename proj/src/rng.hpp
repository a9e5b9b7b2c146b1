#pragma once

#include <cstdint>

namespace clrbte {

// Splittable stream identity: (seed, stream_id) fully determines the variate
// sequence, independent of platform and thread schedule.
struct RngStream {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
};

// SplitMix64 (Steele, Lea & Flood 2014; Vigna's fixed-increment variant).
// Used to expand (seed, stream_id) into generator state.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// xoshiro256++ (Blackman & Vigna 2018), period 2^256 - 1.
class Xoshiro256 {
 public:
  explicit Xoshiro256(RngStream stream) {
    std::uint64_t sm = stream.seed ^ (0x9E3779B97F4A7C15ULL * (stream.stream_id + 1));
    for (auto& w : s_) w = splitmix64(sm);
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // uniform on the open interval (0, 1): 53-bit mantissa, zero excluded
  double uniform() {
    const std::uint64_t bits = next() >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t s_[4];
};

}  // namespace clrbte
