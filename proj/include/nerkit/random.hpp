#pragma once

#include <cstdint>
#include <initializer_list>
#include <utility>
#include <vector>

namespace nerkit {

// Deterministic pseudo-random stream (splitmix64 core).
//
// Streams are derived from a user seed plus an explicit path of integers,
// e.g. (kStreamAugment, technique id, copy index, sentence ordinal), so a
// sentence's draws never depend on processing order. Identical derivation
// inputs always yield identical draw sequences.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : state_(mix(seed + kGamma)) {}

  static RandomStream derive(std::uint64_t seed,
                             std::initializer_list<std::uint64_t> path) {
    RandomStream r(seed);
    for (std::uint64_t e : path) {
      r.state_ = mix(r.state_ ^ (e + kGamma + (r.state_ << 6) + (r.state_ >> 2)));
    }
    return r;
  }

  std::uint64_t next_u64() {
    state_ += kGamma;
    return mix(state_);
  }

  // Uniform in [0,1), 53-bit resolution.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return next_double() < p; }

  // Uniform in [0,n). n must be >= 1. Masked rejection keeps it unbiased.
  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) return 0;
    std::uint64_t mask = ~std::uint64_t{0} >> count_leading_zeros(n - 1);
    for (;;) {
      std::uint64_t v = next_u64() & mask;
      if (v < n) return v;
    }
  }

  // Uniform random permutation (Fisher-Yates).
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[static_cast<std::size_t>(below(i))]);
    }
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
  }

  static int count_leading_zeros(std::uint64_t x) {
    int n = 0;
    for (std::uint64_t bit = std::uint64_t{1} << 63; bit && !(x & bit); bit >>= 1) ++n;
    return n;
  }

  std::uint64_t state_;
};

// Stream domains. Each consumer derives below its own tag so draws in one
// subsystem never shift another's.
inline constexpr std::uint64_t kStreamAugment = 1;
inline constexpr std::uint64_t kStreamPerceptron = 2;
inline constexpr std::uint64_t kStreamSynthetic = 3;

}  // namespace nerkit
