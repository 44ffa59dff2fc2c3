#include <cstdlib>
#include <string_view>

#include "pgap/kernels.hpp"

namespace pgap::kernels {

const KernelTable& active() {
  static const KernelTable& chosen = [&]() -> const KernelTable& {
    const char* forced = std::getenv("PGAP_KERNEL");
    if (forced != nullptr && std::string_view(forced) == "scalar") return scalar();
    if (const KernelTable* simd = avx2()) return *simd;
    return scalar();
  }();
  return chosen;
}

}  // namespace pgap::kernels
