#pragma once

#include <cmath>
#include <cstdint>

namespace macrokin {

// Counter-based splitmix64 stream. The state walks the golden-gamma counter
// and every output is a murmur-style finalizer of the counter, so streams can
// be split in O(1): replica r of master seed s runs on mix64(s + (r+1)*GAMMA).
// Two streams derived from different indices never share a counter sequence
// unless the seeds collide, which is all our ensembles need.
class Rng {
 public:
  static constexpr uint64_t GAMMA = 0x9E3779B97F4A7C15ULL;

  static uint64_t mix64(uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
  }

  Rng() : state_(0) {}
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    state_ += GAMMA;
    return mix64(state_);
  }

  // uniform on (0, 1]; never returns 0 so -log(u) is always finite
  double next_unit() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  double exponential(double rate) { return -std::log(next_unit()) / rate; }

  // unbiased integer in [0, n) via rejection on the top bits
  uint64_t below(uint64_t n) {
    const uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    uint64_t x;
    do {
      x = next_u64();
    } while (x < threshold);
    return x % n;
  }

 private:
  uint64_t state_;
};

// Child stream for replica `index` of `seed`; documented contract for anyone
// reproducing a single replica out of an ensemble.
inline uint64_t split_seed(uint64_t seed, uint64_t index) {
  return Rng::mix64(seed + (index + 1) * Rng::GAMMA);
}

}  // namespace macrokin
