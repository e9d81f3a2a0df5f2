#pragma once

// Data-parallel inner loops of the statevector emulator.
//
// Every kernel has a portable scalar reference in `qwgo::simd::scalar` and,
// on x86-64, an AVX2+FMA variant in `qwgo::simd::avx2`. The public entry
// points in `qwgo::simd` dispatch through a table selected once at startup
// from CPUID. Setting QWGO_SIMD=scalar in the environment (or calling
// set_backend) pins the scalar path.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace qwgo::simd {

using cplx = std::complex<double>;

enum class Backend { kScalar, kAvx2 };

struct KernelTable {
  // y[j] += a * x[j]
  void (*caxpy)(cplx a, const cplx* x, cplx* y, std::size_t n);
  // y[j] *= d[j]
  void (*scale_by_real)(const double* d, cplx* y, std::size_t n);
  // out[j] = |x[j]|^2, returns the sum.
  double (*norm_sq)(const cplx* x, double* out, std::size_t n);
  // Returns sum_j |x[j]|^2.
  double (*total_norm_sq)(const cplx* x, std::size_t n);
  // Returns sum_j x[j].
  cplx (*sum)(const cplx* x, std::size_t n);
  // x[j] = c - x[j]
  void (*reflect)(cplx c, cplx* x, std::size_t n);
  // x[j] = -x[j] where mask[j] != 0
  void (*negate_masked)(const std::uint8_t* mask, cplx* x, std::size_t n);
  // x[j] *= s
  void (*scale)(double s, cplx* x, std::size_t n);
};

namespace scalar {
const KernelTable& table();
}

namespace avx2 {
// nullptr when the binary was built without AVX2 support.
const KernelTable* table();
}

bool cpu_has_avx2();

// Kernel table for a specific backend; throws DomainError if unavailable.
const KernelTable& table_for(Backend b);

Backend active_backend();
void set_backend(Backend b);
std::string_view backend_name(Backend b);

inline const KernelTable& active() { return table_for(active_backend()); }

inline void caxpy(cplx a, std::span<const cplx> x, std::span<cplx> y) {
  active().caxpy(a, x.data(), y.data(), y.size());
}
inline void scale_by_real(std::span<const double> d, std::span<cplx> y) {
  active().scale_by_real(d.data(), y.data(), y.size());
}
inline double norm_sq(std::span<const cplx> x, std::span<double> out) {
  return active().norm_sq(x.data(), out.data(), x.size());
}
inline double total_norm_sq(std::span<const cplx> x) {
  return active().total_norm_sq(x.data(), x.size());
}
inline cplx sum(std::span<const cplx> x) { return active().sum(x.data(), x.size()); }
inline void reflect(cplx c, std::span<cplx> x) { active().reflect(c, x.data(), x.size()); }
inline void negate_masked(std::span<const std::uint8_t> mask, std::span<cplx> x) {
  active().negate_masked(mask.data(), x.data(), x.size());
}
inline void scale(double s, std::span<cplx> x) { active().scale(s, x.data(), x.size()); }

}  // namespace qwgo::simd
