#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace fairdrop {

// Derives an independent substream seed from (seed, stream) with the
// SplitMix64 finalizer. Used everywhere a seeded operation needs fresh
// per-epoch / per-worker randomness that stays reproducible.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream_a,
                              std::uint64_t stream_b) {
  return mix_seed(mix_seed(seed, stream_a), stream_b);
}

// Seeded generator wrapping mt19937_64. The standard distributions are
// implementation-defined, so the draw helpers below are spelled out by hand;
// output is identical on every platform for a given seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform double in [0, 1).
  double next_double() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Uniform index in [0, n). Unbiased via rejection.
  std::size_t next_index(std::size_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x = gen_();
    while (x >= limit) x = gen_();
    return static_cast<std::size_t>(x % n);
  }

  bool bernoulli(double p) { return next_double() < p; }

  // Standard normal via the polar method.
  double next_gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * next_double() - 1.0;
      v = 2.0 * next_double() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

 private:
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace fairdrop
