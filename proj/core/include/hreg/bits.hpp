#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hreg {

using Word = std::uint64_t;

constexpr std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

inline bool test_bit(std::span<const Word> row, std::size_t i) {
  return (row[i >> 6] >> (i & 63)) & 1u;
}

inline void set_bit(std::span<Word> row, std::size_t i) {
  row[i >> 6] |= Word{1} << (i & 63);
}

inline void clear_bit(std::span<Word> row, std::size_t i) {
  row[i >> 6] &= ~(Word{1} << (i & 63));
}

inline std::uint64_t popcount(std::span<const Word> row) {
  std::uint64_t n = 0;
  for (Word w : row) n += static_cast<std::uint64_t>(std::popcount(w));
  return n;
}

/// |a & b| without materializing the intersection.
inline std::uint64_t and_count(std::span<const Word> a, std::span<const Word> b) {
  std::uint64_t n = 0;
  const std::size_t len = a.size() < b.size() ? a.size() : b.size();
  for (std::size_t i = 0; i < len; ++i)
    n += static_cast<std::uint64_t>(std::popcount(a[i] & b[i]));
  return n;
}

/// Builds a packed mask over `size` bits from a list of indices.
std::vector<Word> mask_of(std::span<const std::uint32_t> indices, std::size_t size);

}  // namespace hreg
