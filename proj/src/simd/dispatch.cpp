#include <atomic>
#include <cstdlib>
#include <cstring>

#include "melro/simd/kernels.hpp"

namespace melro::simd {

namespace scalar {
const Kernels& table();
}
#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
const Kernels& table();
}
#endif

namespace {

bool detect_avx2() {
#if (defined(__x86_64__) || defined(_M_X64)) && defined(MELRO_HAVE_AVX2_TU)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend detect_backend() {
  const char* env = std::getenv("MELRO_SIMD");
  if (env != nullptr) {
    if (std::strcmp(env, "scalar") == 0) return Backend::kScalar;
    if (std::strcmp(env, "avx2") == 0 && detect_avx2()) return Backend::kAvx2;
  }
  return detect_avx2() ? Backend::kAvx2 : Backend::kScalar;
}

std::atomic<int> g_forced{-1};

}  // namespace

bool avx2_supported() { return detect_avx2(); }

Backend active_backend() {
  const int forced = g_forced.load(std::memory_order_relaxed);
  if (forced >= 0) return static_cast<Backend>(forced);
  static const Backend detected = detect_backend();
  return detected;
}

void force_backend(Backend b) {
  if (b == Backend::kAvx2 && !detect_avx2()) b = Backend::kScalar;
  g_forced.store(static_cast<int>(b), std::memory_order_relaxed);
}

void reset_backend() { g_forced.store(-1, std::memory_order_relaxed); }

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::kScalar:
      return "scalar";
    case Backend::kAvx2:
      return "avx2";
  }
  return "?";
}

const Kernels& kernels(Backend b) {
#if (defined(__x86_64__) || defined(_M_X64)) && defined(MELRO_HAVE_AVX2_TU)
  if (b == Backend::kAvx2) return avx2::table();
#endif
  (void)b;
  return scalar::table();
}

const Kernels& kernels() { return kernels(active_backend()); }

}  // namespace melro::simd
