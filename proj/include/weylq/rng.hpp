#pragma once

#include <cstdint>
#include <random>

namespace weylq {

// Seeded sampling with a platform-independent mapping (std distributions are
// implementation-defined; the raw mt19937_64 stream is not).
class DetRng {
 public:
  explicit DetRng(uint64_t seed) : gen_(seed) {}

  uint64_t raw() { return gen_(); }

  double unit() { return double(raw() >> 11) * 0x1.0p-53; }  // [0,1)

  double range(double lo, double hi) { return lo + (hi - lo) * unit(); }

  long long integer(long long lo, long long hi) {  // inclusive
    return lo + static_cast<long long>(raw() % static_cast<uint64_t>(hi - lo + 1));
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace weylq
