#include "driftlab/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "driftlab/error.hpp"

namespace driftlab {

namespace {
__extension__ using u128 = unsigned __int128;
}

double Rng::uniform() {
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

std::size_t Rng::below(std::size_t n) {
  if (n == 0) throw ParameterError("Rng::below: n must be positive");
  // Lemire's nearly divisionless method.
  const std::uint64_t range = n;
  u128 product = static_cast<u128>(engine_()) * range;
  auto low = static_cast<std::uint64_t>(product);
  if (low < range) {
    const std::uint64_t threshold = (0 - range) % range;
    while (low < threshold) {
      product = static_cast<u128>(engine_()) * range;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::size_t>(product >> 64);
}

std::vector<std::size_t> Rng::sample_without_replacement(std::size_t n, std::size_t count) {
  if (count > n) throw ParameterError("sample_without_replacement: count exceeds population");
  std::vector<std::size_t> pool(n);
  for (std::size_t i = 0; i < n; ++i) pool[i] = i;
  for (std::size_t i = 0; i < count; ++i) {
    std::swap(pool[i], pool[i + below(n - i)]);
  }
  pool.resize(count);
  return pool;
}

}  // namespace driftlab
