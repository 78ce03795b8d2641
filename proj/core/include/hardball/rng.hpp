#ifndef HARDBALL_RNG_HPP_
#define HARDBALL_RNG_HPP_

#include <cmath>
#include <cstdint>

namespace hardball {

// Counter-based splittable generator. The state is (key, counter); each draw
// feeds key + counter through a splitmix64-style finalizer, so streams derived
// from the same seed with different stream ids never share output and the
// sequence is identical across platforms and thread schedules.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(mix(mix(seed + kGamma) ^ mix(stream * kGamma + 1))) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~std::uint64_t{0}; }

  result_type operator()() {
    counter_ += kGamma;
    return mix(key_ + counter_);
  }

  // Independent child stream; the parent's state is unchanged.
  CounterRng split(std::uint64_t stream) const {
    CounterRng child(key_, stream + 0x9e37);
    return child;
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return double((*this)() >> 11) * 0x1.0p-53; }

  // Uniform on [0, n).
  std::uint64_t below(std::uint64_t n) {
    // Rejection-free modulo bias is negligible for n << 2^64; use
    // multiply-shift which is exact enough for index selection.
    return std::uint64_t((__uint128_t((*this)()) * n) >> 64);
  }

  // Standard normal via polar Box-Muller on our own uniforms, so the
  // byte stream does not depend on the C++ library implementation.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    have_spare_ = true;
    return u * f;
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ull;

  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace hardball

#endif  // HARDBALL_RNG_HPP_
