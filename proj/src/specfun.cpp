#include "qwgo/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "qwgo/error.hpp"

namespace qwgo::specfun {
namespace {

void check_args(int n_lo, int n_hi, double z) {
  if (!(z >= 0.0) || !std::isfinite(z))
    throw DomainError("bessel: argument must be finite and >= 0, got " + std::to_string(z));
  if (z > kMaxArgument) throw DomainError("bessel: argument exceeds " + std::to_string(kMaxArgument));
  if (std::abs(n_lo) > kMaxOrder || std::abs(n_hi) > kMaxOrder)
    throw DomainError("bessel: |order| exceeds " + std::to_string(kMaxOrder));
}

// Start order for the downward sweep. Beyond n ~ z the sequence J_n decays
// like Ai(2^{1/3} (n - z) / z^{1/3}); 15 z^{1/3} past max(n, z) puts the
// starting guess below 1e-16 of the peak.
int start_order(int n_top, double z) {
  const double cube = std::cbrt(z);
  const double base = std::max(static_cast<double>(n_top), std::ceil(z));
  return static_cast<int>(base + std::max(20.0, std::ceil(15.0 * cube))) + 2;
}

// J_0..J_top for z > 0 by Miller's algorithm. Scaled by the sum-of-squares
// identity J_0^2 + 2 sum J_k^2 = 1; the sign comes from J_0 + 2 sum J_2k = 1.
std::vector<double> nonnegative_orders(int top, double z) {
  const int start = start_order(top, z);
  std::vector<double> j(static_cast<std::size_t>(top) + 1, 0.0);
  // Squares of values up to kBig must stay finite.
  constexpr double kBig = 1.0e100;

  double next = 0.0;      // J_{k+1}
  double current = 1.0;   // J_k, arbitrary seed at k = start
  double squares = 0.0;   // 2 sum_{k>=1} J_k^2 (scaled)
  double evens = 0.0;     // 2 sum_{k>=1} J_{2k} (scaled)
  for (int k = start; k >= 1; --k) {
    if (k <= top) j[static_cast<std::size_t>(k)] = current;
    squares += 2.0 * current * current;
    if (k % 2 == 0) evens += 2.0 * current;
    const double prev = (2.0 * k / z) * current - next;  // J_{k-1}
    next = current;
    current = prev;
    if (std::abs(current) > kBig) {
      const double s = 1.0 / kBig;
      current *= s;
      next *= s;
      squares *= s * s;
      evens *= s;
      for (int m = k; m <= top; ++m) j[static_cast<std::size_t>(m)] *= s;
    }
  }
  j[0] = current;
  squares += current * current;
  evens += current;

  double norm = 1.0 / std::sqrt(squares);
  if (evens < 0.0) norm = -norm;
  for (double& v : j) v *= norm;
  return j;
}

// Below this the downward recurrence ratio 2k/z can overflow between rescales.
constexpr double kTinyArgument = 1.0e-20;

// Two-term series (z/2)^n / n! * (1 - (z/2)^2 / (n+1)); exact in double here.
std::vector<double> tiny_argument(int top, double z) {
  std::vector<double> j(static_cast<std::size_t>(top) + 1, 0.0);
  const double h = 0.5 * z;
  double term = 1.0;
  for (int n = 0; n <= top && term != 0.0; ++n) {
    j[static_cast<std::size_t>(n)] = term * (1.0 - h * h / (n + 1));
    term *= h / (n + 1);
  }
  return j;
}

}  // namespace

BesselRow bessel_j_row(int n_min, int n_max, double z) {
  if (n_min > n_max) throw DomainError("bessel_j_row: n_min > n_max");
  check_args(n_min, n_max, z);

  BesselRow row;
  row.z = z;
  row.n_min = n_min;
  row.n_max = n_max;
  row.values.assign(static_cast<std::size_t>(n_max - n_min) + 1, 0.0);

  if (z == 0.0) {
    if (row.contains(0)) row.values[static_cast<std::size_t>(-n_min)] = 1.0;
    return row;
  }

  const int top = std::max(std::abs(n_min), std::abs(n_max));
  const std::vector<double> pos = z < kTinyArgument ? tiny_argument(top, z) : nonnegative_orders(top, z);
  for (int n = n_min; n <= n_max; ++n) {
    const int a = std::abs(n);
    double v = pos[static_cast<std::size_t>(a)];
    if (n < 0 && (a % 2) != 0) v = -v;
    row.values[static_cast<std::size_t>(n - n_min)] = v;
  }
  return row;
}

double bessel_j(int n, double z) { return bessel_j_row(n, n, z).values[0]; }

double bessel_j_deriv(int n, double z) {
  if (n == 0) return -bessel_j(1, z);
  const BesselRow row = bessel_j_row(n - 1, n + 1, z);
  return 0.5 * (row[n - 1] - row[n + 1]);
}

}  // namespace qwgo::specfun
