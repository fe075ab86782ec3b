#include "adlab/kernels.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace adlab::kernels::detail {

namespace {

const Backend& select() {
#if defined(__x86_64__) || defined(_M_X64)
  const char* forced = std::getenv("ADLAB_KERNELS");
  if (forced != nullptr) {
    if (std::strcmp(forced, "scalar") == 0) return scalar_backend;
    if (std::strcmp(forced, "avx2") == 0) {
      if (__builtin_cpu_supports("avx2")) return avx2_backend;
      std::fprintf(stderr,
                   "adlab: ADLAB_KERNELS=avx2 requested but CPU lacks AVX2, "
                   "using scalar\n");
      return scalar_backend;
    }
    std::fprintf(stderr, "adlab: unknown ADLAB_KERNELS value '%s', ignoring\n",
                 forced);
  }
  if (__builtin_cpu_supports("avx2")) return avx2_backend;
#endif
  return scalar_backend;
}

}  // namespace

const Backend& active() {
  static const Backend& backend = select();
  return backend;
}

}  // namespace adlab::kernels::detail
