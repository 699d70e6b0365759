// Deterministic random sampling helpers.
//
// std::mt19937_64 is fully specified by the standard, but the distribution
// classes are not; every artifact we emit must be reproducible byte-for-byte
// from a seed, so sampling is implemented here on top of the raw generator.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace approxlab {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // Uniform in [0, n), unbiased via rejection.  n must be positive.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = n * ((~std::uint64_t{0}) / n);
    std::uint64_t x;
    do {
      x = eng_();
    } while (x >= limit);
    return x % n;
  }

  // Uniform integer in [lo, hi] inclusive.
  long long range(long long lo, long long hi) {
    return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  // Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // Uniform double in [-1, 1).
  double signed_unit() { return 2.0 * unit() - 1.0; }

  bool coin() { return (eng_() >> 63) != 0; }

  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[below(v.size())];
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[below(i)]);
    }
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace approxlab
