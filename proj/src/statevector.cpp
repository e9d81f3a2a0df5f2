#include "qwgo/statevector.hpp"

#include <cmath>
#include <string>

#include "qwgo/error.hpp"
#include "qwgo/simd.hpp"

namespace qwgo {

GridDomain::GridDomain(double x_lo, double x_hi, int qubits)
    : x_lo_(x_lo), x_hi_(x_hi), qubits_(qubits) {
  if (!std::isfinite(x_lo) || !std::isfinite(x_hi) || !(x_hi > x_lo))
    throw DomainError("grid domain needs finite x_hi > x_lo");
  if (qubits < 1 || qubits > kMaxQubits)
    throw DomainError("qubit count must be in [1, " + std::to_string(kMaxQubits) + "]");
  size_ = std::size_t{1} << qubits;
  delta_ = (x_hi - x_lo) / static_cast<double>(size_);
}

std::size_t GridDomain::nearest_index(double x) const {
  const double t = std::round((x - x_lo_) / delta_);
  if (!(t > 0.0)) return 0;
  if (t >= static_cast<double>(size_ - 1)) return size_ - 1;
  return static_cast<std::size_t>(t);
}

QuantumState::QuantumState(const GridDomain& domain, std::vector<cplx> amplitudes)
    : domain_(domain), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != domain_.size())
    throw DomainError("amplitude count " + std::to_string(amplitudes_.size()) +
                      " does not match grid size " + std::to_string(domain_.size()));
}

double QuantumState::norm_sq() const { return simd::total_norm_sq(amplitudes_); }

QuantumState init_basis(const GridDomain& domain, std::size_t j) {
  if (j >= domain.size())
    throw DomainError("basis index " + std::to_string(j) + " out of range");
  QuantumState s(domain);
  s[j] = 1.0;
  return s;
}

QuantumState init_uniform(const GridDomain& domain) {
  const double a = 1.0 / std::sqrt(static_cast<double>(domain.size()));
  return QuantumState(domain, std::vector<cplx>(domain.size(), cplx{a, 0.0}));
}

std::vector<double> probabilities(const QuantumState& state) {
  std::vector<double> p(state.size());
  const double total = simd::norm_sq(state.amplitudes(), p);
  if (!(total > 0.0) || !std::isfinite(total))
    throw NumericalFailure("probabilities: state has zero or non-finite norm");
  const double inv = 1.0 / total;
  for (double& v : p) v *= inv;
  return p;
}

QuantumState normalize(QuantumState state) {
  const double total = state.norm_sq();
  if (!(total > 0.0) || !std::isfinite(total))
    throw NumericalFailure("normalize: state has zero or non-finite norm");
  simd::scale(1.0 / std::sqrt(total), state.amplitudes());
  return state;
}

std::size_t sample_index(std::span<const double> weights, double total, double u) {
  const double target = u * total;
  double cum = 0.0;
  std::size_t last_nonzero = 0;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    if (weights[j] <= 0.0) continue;
    cum += weights[j];
    last_nonzero = j;
    if (target < cum) return j;
  }
  // Rounding left target >= cum; the tail belongs to the last live state.
  return last_nonzero;
}

std::size_t measure(const QuantumState& state, Rng& rng) {
  std::vector<double> w(state.size());
  const double total = simd::norm_sq(state.amplitudes(), w);
  if (!(total > 0.0) || !std::isfinite(total))
    throw NumericalFailure("measure: state has zero or non-finite norm");
  return sample_index(w, total, rng.uniform());
}

}  // namespace qwgo
