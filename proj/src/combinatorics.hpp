#pragma once

#include <cstdint>
#include <vector>

namespace emptystar::detail {

// Advances c (strictly increasing, values < n) to the next combination in
// lexicographic order. Returns false after the last one.
inline bool next_combination(std::vector<std::uint32_t>& c, std::uint32_t n) {
  const std::size_t k = c.size();
  std::size_t i = k;
  while (i > 0) {
    --i;
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

inline std::vector<std::uint32_t> first_combination(std::size_t k) {
  std::vector<std::uint32_t> c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = static_cast<std::uint32_t>(i);
  return c;
}

}  // namespace emptystar::detail
