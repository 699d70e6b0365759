#include "approxlab/bitset.hpp"

namespace approxlab {

std::vector<int> Bitset::to_indices() const {
  std::vector<int> out;
  out.reserve(count());
  for_each([&](std::size_t i) { out.push_back(static_cast<int>(i)); });
  return out;
}

Bitset Bitset::from_indices(std::size_t size, const std::vector<int>& idx) {
  Bitset b(size);
  for (int i : idx) b.set(static_cast<std::size_t>(i));
  return b;
}

}  // namespace approxlab
