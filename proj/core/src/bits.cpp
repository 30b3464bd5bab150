#include "hreg/bits.hpp"

namespace hreg {

std::vector<Word> mask_of(std::span<const std::uint32_t> indices, std::size_t size) {
  std::vector<Word> mask(words_for(size), 0);
  for (auto i : indices) set_bit(mask, i);
  return mask;
}

}  // namespace hreg
