#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>

#include "pgap/kernels.hpp"

namespace pgap::kernels::detail {

inline void load_signs(std::uint64_t mask, std::size_t n, double* z) {
  z[0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) z[i] = ((mask >> (i - 1)) & 1u) ? -1.0 : 1.0;
}

inline void consider(SignSearchResult& best, double value, std::uint64_t mask, double tie_tol) {
  if (value > best.value + tie_tol) {
    best = {value, mask};
  } else if (value >= best.value - tie_tol && mask_precedes(mask, best.mask)) {
    best = {value > best.value ? value : best.value, mask};
  }
}

}  // namespace pgap::kernels::detail
