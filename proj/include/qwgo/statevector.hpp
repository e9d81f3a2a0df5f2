#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "qwgo/rng.hpp"

namespace qwgo {

using cplx = std::complex<double>;

inline constexpr int kMaxQubits = 24;

// Discretization of [x_lo, x_hi] into N = 2^q left-aligned points
// x_j = x_lo + j * delta, delta = (x_hi - x_lo) / N.
class GridDomain {
 public:
  // Throws DomainError unless x_hi > x_lo (both finite) and 1 <= q <= kMaxQubits.
  GridDomain(double x_lo, double x_hi, int qubits);

  double x_lo() const { return x_lo_; }
  double x_hi() const { return x_hi_; }
  int qubits() const { return qubits_; }
  std::size_t size() const { return size_; }
  double delta() const { return delta_; }

  double coordinate(std::size_t j) const { return x_lo_ + static_cast<double>(j) * delta_; }
  // Grid index whose coordinate is closest to x, clamped to the grid.
  std::size_t nearest_index(double x) const;

 private:
  double x_lo_;
  double x_hi_;
  int qubits_;
  std::size_t size_;
  double delta_;
};

// Amplitudes of a q-qubit register over the grid states of a domain.
class QuantumState {
 public:
  explicit QuantumState(const GridDomain& domain)
      : domain_(domain), amplitudes_(domain.size(), cplx{0.0, 0.0}) {}

  // Throws DomainError if amplitudes.size() != domain.size().
  QuantumState(const GridDomain& domain, std::vector<cplx> amplitudes);

  const GridDomain& domain() const { return domain_; }
  std::size_t size() const { return amplitudes_.size(); }

  std::span<cplx> amplitudes() { return amplitudes_; }
  std::span<const cplx> amplitudes() const { return amplitudes_; }
  cplx& operator[](std::size_t j) { return amplitudes_[j]; }
  const cplx& operator[](std::size_t j) const { return amplitudes_[j]; }

  double norm_sq() const;

 private:
  GridDomain domain_;
  std::vector<cplx> amplitudes_;
};

QuantumState init_basis(const GridDomain& domain, std::size_t j);

// Hadamard image of |0>: every amplitude 1/sqrt(N).
QuantumState init_uniform(const GridDomain& domain);

// |psi_j|^2 / sum_k |psi_k|^2. Throws NumericalFailure for a zero state.
std::vector<double> probabilities(const QuantumState& state);

QuantumState normalize(QuantumState state);

// Inverse-CDF sampling with exactly one uniform variate from rng.
std::size_t measure(const QuantumState& state, Rng& rng);

// Same rule over an explicit (unnormalized, nonnegative) weight vector.
std::size_t sample_index(std::span<const double> weights, double total, double u);

}  // namespace qwgo
