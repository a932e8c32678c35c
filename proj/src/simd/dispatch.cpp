#include <cstdlib>
#include <cstring>

#include "parastat/simd/kernels.hpp"

namespace parastat::simd {

#if defined(PARASTAT_HAVE_AVX2)
const Kernels* avx2_table();
#endif

const Kernels* avx2_kernels() {
#if defined(PARASTAT_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

const Kernels& active() {
  static const Kernels& chosen = [] () -> const Kernels& {
    const char* env = std::getenv("PARASTAT_SIMD");
    if (env != nullptr && std::strcmp(env, "scalar") == 0) return scalar_kernels();
    if (const Kernels* k = avx2_kernels()) return *k;
    return scalar_kernels();
  }();
  return chosen;
}

}  // namespace parastat::simd
