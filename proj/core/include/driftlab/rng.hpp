#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace driftlab {

/// SplitMix64 finalizer; a bijective 64-bit mix.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Derives a child seed from a parent seed and a stream index.
constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) noexcept {
  return mix64(mix64(parent) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t a,
                                    std::uint64_t b) noexcept {
  return derive_seed(derive_seed(parent, a), b);
}

/// Seeded generator whose output sequence is identical on every platform:
/// std::mt19937_64 is fully specified, and the distributions below are
/// implemented here rather than taken from <random>.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in the open interval (0, 1).
  double uniform();

  /// Standard normal via Box-Muller.
  double normal();

  /// Uniform integer in [0, n); n must be positive.
  std::size_t below(std::size_t n);

  /// Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[below(i)]);
    }
  }

  /// `count` distinct indices drawn uniformly from [0, n), in draw order.
  std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t count);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace driftlab
