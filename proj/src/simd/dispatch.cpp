#include <atomic>
#include <cstdlib>
#include <string>

#include "qwgo/error.hpp"
#include "qwgo/simd.hpp"

namespace qwgo::simd {

#ifndef QWGO_HAVE_AVX2
namespace avx2 {
const KernelTable* table() { return nullptr; }
}  // namespace avx2
#endif

bool cpu_has_avx2() {
#if defined(QWGO_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {

Backend detect() {
  if (const char* env = std::getenv("QWGO_SIMD"); env && std::string(env) == "scalar")
    return Backend::kScalar;
  return cpu_has_avx2() ? Backend::kAvx2 : Backend::kScalar;
}

std::atomic<Backend>& selected() {
  static std::atomic<Backend> backend{detect()};
  return backend;
}

}  // namespace

const KernelTable& table_for(Backend b) {
  if (b == Backend::kAvx2) {
    const KernelTable* t = avx2::table();
    if (t == nullptr || !cpu_has_avx2()) throw DomainError("AVX2 kernels unavailable on this CPU/build");
    return *t;
  }
  return scalar::table();
}

Backend active_backend() { return selected().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  (void)table_for(b);
  selected().store(b, std::memory_order_relaxed);
}

std::string_view backend_name(Backend b) {
  return b == Backend::kAvx2 ? "avx2" : "scalar";
}

}  // namespace qwgo::simd
