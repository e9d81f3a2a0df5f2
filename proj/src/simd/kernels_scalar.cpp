#include "qwgo/simd.hpp"

namespace qwgo::simd::scalar {
namespace {

void caxpy(cplx a, const cplx* x, cplx* y, std::size_t n) {
  const double ar = a.real(), ai = a.imag();
  for (std::size_t j = 0; j < n; ++j) {
    const double xr = x[j].real(), xi = x[j].imag();
    y[j] = {y[j].real() + (ar * xr - ai * xi), y[j].imag() + (ar * xi + ai * xr)};
  }
}

void scale_by_real(const double* d, cplx* y, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) y[j] = {y[j].real() * d[j], y[j].imag() * d[j]};
}

double norm_sq(const cplx* x, double* out, std::size_t n) {
  double total = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double p = x[j].real() * x[j].real() + x[j].imag() * x[j].imag();
    out[j] = p;
    total += p;
  }
  return total;
}

double total_norm_sq(const cplx* x, std::size_t n) {
  double total = 0.0;
  for (std::size_t j = 0; j < n; ++j)
    total += x[j].real() * x[j].real() + x[j].imag() * x[j].imag();
  return total;
}

cplx sum(const cplx* x, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    re += x[j].real();
    im += x[j].imag();
  }
  return {re, im};
}

void reflect(cplx c, cplx* x, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) x[j] = {c.real() - x[j].real(), c.imag() - x[j].imag()};
}

void negate_masked(const std::uint8_t* mask, cplx* x, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j)
    if (mask[j]) x[j] = {-x[j].real(), -x[j].imag()};
}

void scale(double s, cplx* x, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) x[j] = {x[j].real() * s, x[j].imag() * s};
}

constexpr KernelTable kTable{caxpy, scale_by_real, norm_sq, total_norm_sq,
                             sum,   reflect,       negate_masked, scale};

}  // namespace

const KernelTable& table() { return kTable; }

}  // namespace qwgo::simd::scalar
