#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <span>
#include <vector>

#include "qwgo/specfun.hpp"
#include "qwgo/statevector.hpp"

namespace qwgo::ctqw {

// One walk step: diffusion coefficient b, time step tau, spacing delta and
// the dimensionless spread z = b * tau / delta^2.
struct WalkParams {
  double b = 0.0;
  double tau = 0.0;
  double delta = 0.0;
  double z = 0.0;

  // Users pick (z, tau); b follows as z * delta^2 / tau. tau = 0 (with z = 0)
  // is the identity step. Throws DomainError otherwise on non-positive input.
  static WalkParams from_spread(double z, double tau, double delta);
  static WalkParams from_diffusion(double b, double tau, double delta);
};

inline constexpr double kDefaultTau = 2.0;
// Default spread N / 2: a centre start reaches both domain ends.
inline double default_spread(std::size_t n) { return 0.5 * static_cast<double>(n); }

// Truncated lattice propagator u_jk = i^(j-k) e^{-iz} e^{-V_j tau} J_{j-k}(z).
// The Toeplitz factor is stored once as 2N-1 coefficients indexed by j-k.
class WalkOperator {
 public:
  WalkOperator(const GridDomain& domain, const WalkParams& params, std::vector<double> potential);

  const WalkParams& params() const { return params_; }
  std::size_t size() const { return n_; }
  std::span<const double> potential() const { return potential_; }
  // Absolute damping e^{-V_j tau}; throws NumericalFailure when it overflows.
  std::span<const double> damping() const;
  // e^{-(V_j - min V) tau}, always finite; equals damping() up to a positive
  // factor, which cancels on normalization.
  std::span<const double> relative_damping() const { return relative_damping_; }
  bool has_absolute_damping() const { return !damping_.empty(); }
  const specfun::BesselRow& bessel() const { return bessel_; }
  cplx global_phase() const { return phase_; }

  // i^d e^{-iz} J_d(z) for d = j - k in [-(N-1), N-1].
  cplx toeplitz(std::ptrdiff_t d) const {
    return coeffs_[static_cast<std::size_t>(d + static_cast<std::ptrdiff_t>(n_) - 1)];
  }
  cplx entry(std::size_t j, std::size_t k) const {
    return damping()[j] * toeplitz(static_cast<std::ptrdiff_t>(j) - static_cast<std::ptrdiff_t>(k));
  }
  std::span<const cplx> coefficients() const { return coeffs_; }

  Eigen::MatrixXcd dense() const;

 private:
  std::size_t n_;
  WalkParams params_;
  std::vector<double> potential_;
  specfun::BesselRow bessel_;
  cplx phase_;
  std::vector<cplx> coeffs_;
  std::vector<double> damping_;
  std::vector<double> relative_damping_;
};

// Tridiagonal lattice Hamiltonian: -b/(2 delta^2) off the diagonal,
// b/delta^2 - i V_k on it.
Eigen::MatrixXcd build_hamiltonian(const GridDomain& domain, double b, std::span<const double> potential);

WalkOperator build_walk_operator(const GridDomain& domain, const WalkParams& params,
                                 std::vector<double> potential);

// psi'_j = sum_k u_jk psi_k over the grid (no wraparound, not renormalized).
QuantumState apply_walk(const WalkOperator& op, const QuantumState& state);

// apply_walk followed by normalization, computed with the relative damping so
// that deep potential wells cannot overflow.
QuantumState apply_walk_normalized(const WalkOperator& op, const QuantumState& state);

// Normalized p_j proportional to e^{-2 V_j tau} J_{j-K}(z)^2.
std::vector<double> walk_probability_closed_form(const GridDomain& domain, const WalkParams& params,
                                                 std::span<const double> potential, std::size_t start);

// sqrt(m) e^{-c tau} |J_L| > sin((2r+1) asin(sqrt(m/N))): whether one walk
// step beats r Grover rotations at locating one of m marked states.
bool qw_efficiency_bound(std::size_t m, std::size_t n, double threshold, int rotations,
                         const WalkParams& params, double j_l);

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

// Mean and variance of f under the normalized distribution p.
Moments moments(std::span<const double> p, std::span<const double> f);

}  // namespace qwgo::ctqw
