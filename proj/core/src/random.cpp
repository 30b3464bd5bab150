#include "hreg/random.hpp"

#include <algorithm>

namespace hreg {

std::uint64_t Rng::below(std::uint64_t bound) {
  // Largest multiple of bound representable; draws at or above it are rejected.
  const std::uint64_t limit = bound * (~std::uint64_t{0} / bound);
  for (;;) {
    const std::uint64_t x = engine_();
    if (x < limit) return x % bound;
  }
}

std::vector<std::uint32_t> Rng::subset(std::uint32_t n, std::uint32_t k) {
  std::vector<std::uint32_t> all(n);
  for (std::uint32_t i = 0; i < n; ++i) all[i] = i;
  // Partial Fisher-Yates: the first k slots end up a uniform k-subset.
  for (std::uint32_t i = 0; i < k && i < n; ++i) {
    const std::uint32_t j = i + static_cast<std::uint32_t>(below(n - i));
    std::swap(all[i], all[j]);
  }
  all.resize(std::min(k, n));
  std::sort(all.begin(), all.end());
  return all;
}

}  // namespace hreg
