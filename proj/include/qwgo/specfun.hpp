#pragma once

#include <vector>

namespace qwgo::specfun {

// Largest |n| accepted by the Bessel routines.
inline constexpr int kMaxOrder = 100000;
// Largest argument accepted; the backward sweep costs O(z) memory and time.
inline constexpr double kMaxArgument = 1.0e6;

// J_n(z) for integer orders n_min..n_max at one argument z >= 0.
struct BesselRow {
  double z = 0.0;
  int n_min = 0;
  int n_max = 0;
  std::vector<double> values;

  double operator[](int n) const { return values[static_cast<std::size_t>(n - n_min)]; }
  bool contains(int n) const { return n >= n_min && n <= n_max; }
};

// Bessel function of the first kind, integer order. Absolute error below
// 1e-12 for |n| <= 2048, z <= 1e4. Throws DomainError for z < 0, non-finite
// z, z > kMaxArgument or |n| > kMaxOrder.
double bessel_j(int n, double z);

// All orders n_min..n_max from a single normalized backward-recurrence sweep.
BesselRow bessel_j_row(int n_min, int n_max, double z);

// dJ_n/dz = (J_{n-1} - J_{n+1}) / 2, and -J_1 for n = 0.
double bessel_j_deriv(int n, double z);

}  // namespace qwgo::specfun
