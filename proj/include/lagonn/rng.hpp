#pragma once

#include <cstdint>
#include <numbers>
#include <random>
#include <string_view>

namespace lagonn {

// mt19937_64 output is bit-identical across standard library implementations;
// the distributions are not, so all conversions from raw 64-bit draws are spelled
// out here instead of using <random> distribution objects.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t raw() { return eng_(); }

  // uniform in [0, 1), 53-bit resolution
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // uniform in [0, 2*pi)
  double angle() { return 2.0 * std::numbers::pi * uniform(); }

  // uniform integer in [0, n), n >= 1, by rejection to avoid modulo bias
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t x;
    do {
      x = eng_();
    } while (x >= limit);
    return x % n;
  }

  int spin() { return (eng_() >> 63) ? 1 : -1; }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 eng_;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// Deterministic per-trial seed derived from a master seed, an instance name and
// the trial index. Stable across platforms and thread counts.
inline std::uint64_t trial_seed(std::uint64_t master, std::string_view instance_name,
                                std::uint64_t trial) {
  return splitmix64(splitmix64(master ^ fnv1a(instance_name)) + trial);
}

} // namespace lagonn
