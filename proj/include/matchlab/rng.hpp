#pragma once

#include <cmath>
#include <cstdint>

namespace matchlab {

// Identical (value, stream) pairs reproduce identical samples; parallel
// batches take disjoint streams (or per-sample substreams derived below).
struct Seed {
  std::uint64_t value = 0;
  std::uint64_t stream = 0;
};

// SplitMix64: counter-based, one 64-bit state word, finalizer of Steele et
// al.  Version pinned: the output sequence of this file is part of the
// reproducibility contract, do not change constants.
class Rng {
 public:
  explicit Rng(Seed s) : Rng(s.value, s.stream) {}
  Rng(std::uint64_t value, std::uint64_t stream) {
    key_ = mix(value ^ 0x6a09e667f3bcc909ull) ^ mix(stream + 0x9e3779b97f4a7c15ull);
    state_ = mix(key_);
  }

  // Child generator for sample index i; independent of call order.
  Rng substream(std::uint64_t i) const {
    Rng r(0, 0);
    r.key_ = mix(key_ + 0xd1b54a32d192ed03ull * (i + 1));
    r.state_ = mix(r.key_);
    return r;
  }

  std::uint64_t u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix(state_);
  }

  // uniform on [0,1), 53 random bits
  double uniform01() { return static_cast<double>(u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  bool coin() { return (u64() & 1ull) != 0; }

  // strictly positive exponential
  double exponential(double rate) {
    double u;
    do {
      u = uniform01();
    } while (u <= 0.0);
    return -std::log(u) / rate;
  }

  // Poisson(mean) via unit-exponential interarrivals; exact, O(mean).
  std::uint64_t poisson(double mean) {
    std::uint64_t k = 0;
    double s = exponential(1.0);
    while (s <= mean) {
      ++k;
      s += exponential(1.0);
    }
    return k;
  }

  // unbiased integer in [0, n)
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) return 0;
    std::uint64_t lim = n * ((~0ull) / n);
    std::uint64_t v;
    do {
      v = u64();
    } while (v >= lim);
    return v % n;
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t key_ = 0;
  std::uint64_t state_ = 0;
};

}  // namespace matchlab
