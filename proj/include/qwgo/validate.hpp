#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

namespace qwgo::validate {

struct CheckResult {
  std::string family;
  std::string name;
  bool passed = false;
  double measured = 0.0;   // error or statistic that was compared
  double tolerance = 0.0;  // bound it was compared against
  std::string detail;
};

struct Options {
  std::optional<std::string> family;  // run all families when unset
  std::size_t expm_size = 256;
  double expm_spread = 20.0;
};

// bessel, grover-law, expm, closed-form, lemmas, efficiency-bound,
// fixedpoint, simd
std::vector<std::string> families();

// Throws UsageError for an unknown family name.
std::vector<CheckResult> run_checks(const Options& options);

// exp(-i H tau) for the V = 0 lattice Hamiltonian with b tau / delta^2 = z,
// from the eigendecomposition of its real symmetric tridiagonal matrix.
Eigen::MatrixXcd free_walk_expm(std::size_t n, double z);

// Largest |U_bessel - U_expm| over entries with both indices in
// [n/4, 3n/4].
double expm_interior_deviation(std::size_t n, double z);

// e^{-x} at x = k/8 rounded to the nearest multiple of 1/8 (ties down),
// clamped to [0, 7/8]; returned as the 3-bit integer.
int fixedpoint_reference(int k);

}  // namespace qwgo::validate
