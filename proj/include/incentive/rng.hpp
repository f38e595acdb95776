/**
 * @file rng.hpp
 * @brief Seeded random streams with explicit, portable transforms.
 *
 * Distribution transforms are written out (inverse CDF, Box-Muller) instead
 * of using std:: distributions, whose algorithms are implementation-defined.
 * With a fixed seed the same numbers come out on every standard library.
 */

#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>
#include <vector>

namespace incentive {

/// One step of the splitmix64 generator; also used to derive child seeds.
inline std::uint64_t splitmix64(std::uint64_t &state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Child seed for substream @p index of @p seed. Substreams evolve
/// independently, so work split across them is order-insensitive.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t state = seed ^ (0x2545f4914f6cdd1dull * (index + 1));
  return splitmix64(state);
}

/// xoshiro256** generator with explicit distribution transforms.
class Rng {
public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t state = seed;
    for (auto &word : state_) word = splitmix64(state);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform on [0, 1), 53-bit resolution.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform on (0, 1], safe as a log argument.
  double uniform01_positive() { return 1.0 - uniform01(); }

  double uniform(double lo, double hi) {
    assert(lo <= hi);
    return lo + (hi - lo) * uniform01();
  }

  /// Uniform integer in [lo, hi], both ends included.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    assert(lo <= hi);
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(next_u64() % span);
  }

  bool bernoulli(double p) { return uniform01() < p; }

  /// Gumbel with location 0 and scale @p scale, via the inverse CDF.
  double gumbel(double scale) {
    assert(scale > 0.0);
    return -scale * std::log(-std::log(uniform01_positive()));
  }

  /// Standard normal via Box-Muller (one value per call, no caching).
  double normal01() {
    const double r = std::sqrt(-2.0 * std::log(uniform01_positive()));
    const double theta = 2.0 * 3.14159265358979323846 * uniform01();
    return r * std::cos(theta);
  }

  double lognormal(double log_mean, double log_sd) {
    return std::exp(log_mean + log_sd * normal01());
  }

  /// Index drawn with probability proportional to @p weights.
  std::size_t categorical(const std::vector<double> &weights) {
    assert(!weights.empty());
    double total = 0.0;
    for (double w : weights) {
      assert(w >= 0.0);
      total += w;
    }
    double u = uniform01() * total;
    for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
      u -= weights[i];
      if (u < 0.0) return i;
    }
    return weights.size() - 1;
  }

private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
};

}  // namespace incentive
