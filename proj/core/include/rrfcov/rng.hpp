// Counter-based deterministic random streams. Every consumer derives an
// independent stream from (seed, stream id); values depend only on the
// counter, never on sharing or evaluation order, so results are reproducible
// bit-for-bit across platforms and thread counts.
#pragma once

#include <cstdint>

#include "rrfcov/geometry.hpp"

namespace rrfcov {

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

inline uint64_t derive_stream(uint64_t seed, uint64_t stream) {
  return splitmix64(seed ^ splitmix64(stream + 0x632BE59BD9B4E019ull));
}

class RandomStream {
 public:
  RandomStream(uint64_t seed, uint64_t stream)
      : key_(derive_stream(seed, stream)) {}

  uint64_t at(uint64_t counter) const {
    return splitmix64(key_ + counter * 0x9E3779B97F4A7C15ull);
  }

  uint64_t next() { return at(counter_++); }

  // uniform in [0, 1)
  double next_u01() { return (next() >> 11) * 0x1.0p-53; }

  // uniform in (-pi, pi]
  double next_angle() { return kPi - kTwoPi * next_u01(); }

  double next_in(double lo, double hi) { return lo + (hi - lo) * next_u01(); }

  uint64_t counter() const { return counter_; }

 private:
  uint64_t key_;
  uint64_t counter_ = 0;
};

}  // namespace rrfcov
