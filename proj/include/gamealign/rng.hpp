#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace gamealign {

// All randomness in the library flows through this header so that results are
// reproducible bit-for-bit across platforms. The generator is std::mt19937_64
// (its output sequence is pinned by the standard); every distribution
// transform is spelled out here instead of using std:: distributions, whose
// output is implementation-defined.

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Derives an independent stream seed from a base seed and up to two stream
// identifiers. Used wherever one user-facing seed has to fan out into many
// estimators (grid entries, per-case generators, pipeline stages).
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  std::uint64_t s = splitmix64(seed);
  s = splitmix64(s ^ a);
  if (b != 0) s = splitmix64(s ^ b);
  return s;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1), 53 significant bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Box-Muller transform; consumes exactly two draws per call.
  double normal() {
    const double u1 = 1.0 - uniform01();  // (0, 1]
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  // Unbiased integer in [0, bound); bound must be nonzero.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = bound * (UINT64_MAX / bound);
    std::uint64_t x = next_u64();
    while (x >= limit) x = next_u64();
    return x % bound;
  }

  // Fisher-Yates permutation of 0..n-1.
  std::vector<int> permutation(int n) {
    std::vector<int> p(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
    for (int i = n - 1; i > 0; --i) {
      const auto j = static_cast<int>(below(static_cast<std::uint64_t>(i) + 1));
      std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(j)]);
    }
    return p;
  }

  // Each bit of `allowed` is kept independently with probability 1/2.
  std::uint64_t subset_bits(std::uint64_t allowed) { return next_u64() & allowed; }

  // Uniform size-k subset of the given items (partial Fisher-Yates).
  std::vector<int> subset_of_size(std::vector<int> items, int k) {
    const int n = static_cast<int>(items.size());
    for (int i = 0; i < k; ++i) {
      const auto j = i + static_cast<int>(below(static_cast<std::uint64_t>(n - i)));
      std::swap(items[static_cast<std::size_t>(i)], items[static_cast<std::size_t>(j)]);
    }
    items.resize(static_cast<std::size_t>(k));
    return items;
  }

  // Isotropic unit vector of the given dimension.
  std::vector<double> unit_vector(int dim) {
    std::vector<double> v(static_cast<std::size_t>(dim));
    while (true) {
      double sq = 0.0;
      for (auto& x : v) {
        x = normal();
        sq += x * x;
      }
      if (sq > 1e-24) {
        const double inv = 1.0 / std::sqrt(sq);
        for (auto& x : v) x *= inv;
        return v;
      }
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace gamealign
