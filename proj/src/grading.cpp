#include "bvdeform/grading.hpp"

#include <stdexcept>
#include <vector>

namespace bvdeform {

std::string to_string(const GradedVar& v) { return v.block + "_" + std::to_string(v.index); }

int koszul_sign(std::span<const GradedVar> before, std::span<const GradedVar> after) {
  if (before.size() != after.size())
    throw std::invalid_argument("koszul_sign: sequences differ in length");
  // Match each element of `after` to the earliest unused equal element of `before`.
  std::vector<int> position(after.size(), -1);
  std::vector<bool> used(before.size(), false);
  for (std::size_t i = 0; i < after.size(); ++i) {
    for (std::size_t j = 0; j < before.size(); ++j) {
      if (!used[j] && before[j] == after[i]) {
        used[j] = true;
        position[i] = static_cast<int>(j);
        break;
      }
    }
    if (position[i] < 0)
      throw std::invalid_argument("koszul_sign: not a permutation of the input sequence");
  }
  // Inversions among odd elements only.
  int inversions = 0;
  for (std::size_t i = 0; i < after.size(); ++i) {
    if (!after[i].odd()) continue;
    for (std::size_t j = i + 1; j < after.size(); ++j)
      if (after[j].odd() && position[j] < position[i]) ++inversions;
  }
  return sign_power(inversions);
}

}  // namespace bvdeform
