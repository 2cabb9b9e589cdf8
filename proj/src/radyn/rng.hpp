#pragma once

// Deterministic random streams for the simulator.
//
// splitmix64 derives stream seeds, xoshiro256** generates the stream.
// Samplers are hand-rolled (not std::*_distribution) so results are
// reproducible bit-for-bit for a given seed regardless of the standard
// library in use.

#include <cmath>
#include <cstdint>

namespace radyn {

inline uint64_t splitmix64_next(uint64_t& state) {
  uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// One-shot mix of a 64-bit value.
inline uint64_t mix64(uint64_t x) { return splitmix64_next(x); }

class Rng {
 public:
  static constexpr const char* kAlgorithm =
      "xoshiro256** with splitmix64 stream derivation";

  explicit Rng(uint64_t seed) {
    uint64_t sm = seed;
    for (auto& word : s_) word = splitmix64_next(sm);
  }

  // Seed for one replication: independent of every other (grid index,
  // replication) pair under the same master seed.
  static uint64_t derive(uint64_t master, uint64_t grid_index,
                         uint64_t replication) {
    uint64_t h = mix64(master ^ mix64(0x632BE59BD9B4E019ULL * (grid_index + 1)));
    return mix64(h ^ mix64(0xD1B54A32D192ED03ULL * (replication + 1)));
  }

  static Rng for_replication(uint64_t master, uint64_t grid_index,
                             uint64_t replication) {
    return Rng(derive(master, grid_index, replication));
  }

  uint64_t next_u64() {
    const uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in (0, 1]; safe as a log() argument.
  double uniform_pos() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  double exponential(double rate) { return -std::log(uniform_pos()) / rate; }

  // Unbiased integer in [0, n); n >= 1.
  uint64_t uniform_index(uint64_t n) {
    unsigned __int128 m =
        static_cast<unsigned __int128>(next_u64()) * static_cast<unsigned __int128>(n);
    auto low = static_cast<uint64_t>(m);
    if (low < n) {
      const uint64_t threshold = (0 - n) % n;
      while (low < threshold) {
        m = static_cast<unsigned __int128>(next_u64()) * static_cast<unsigned __int128>(n);
        low = static_cast<uint64_t>(m);
      }
    }
    return static_cast<uint64_t>(m >> 64);
  }

  // Poisson sampler: sequential inversion below mean 30, Hormann's PTRS
  // transformed rejection above. Exact for all means that fit a double.
  uint64_t poisson(double mean) {
    if (mean <= 0.0) return 0;
    if (mean < 30.0) return poisson_inversion(mean);
    return poisson_ptrs(mean);
  }

 private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  uint64_t poisson_inversion(double mean) {
    const double limit = std::exp(-mean);
    uint64_t k = 0;
    double prod = uniform_pos();
    while (prod > limit) {
      ++k;
      prod *= uniform_pos();
    }
    return k;
  }

  uint64_t poisson_ptrs(double mean) {
    const double b = 0.931 + 2.53 * std::sqrt(mean);
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    const double log_mean = std::log(mean);
    for (;;) {
      const double u = uniform() - 0.5;
      const double v = uniform_pos();
      const double us = 0.5 - std::abs(u);
      const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
      if (us >= 0.07 && v <= v_r) return static_cast<uint64_t>(kf);
      if (kf < 0.0 || (us < 0.013 && v > us)) continue;
      if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
          kf * log_mean - mean - std::lgamma(kf + 1.0)) {
        return static_cast<uint64_t>(kf);
      }
    }
  }

  uint64_t s_[4];
};

}  // namespace radyn
