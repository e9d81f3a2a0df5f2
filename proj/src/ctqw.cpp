#include "qwgo/ctqw.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qwgo/error.hpp"
#include "qwgo/simd.hpp"

namespace qwgo::ctqw {
namespace {

// i^d for integer d.
cplx i_pow(std::ptrdiff_t d) {
  switch (((d % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

void check_potential(const GridDomain& domain, std::size_t len) {
  if (len != domain.size())
    throw DomainError("potential length " + std::to_string(len) + " does not match grid size " +
                      std::to_string(domain.size()));
}

// e^{-V tau} overflows double past this exponent.
constexpr double kMaxExponent = 709.0;

}  // namespace

WalkParams WalkParams::from_spread(double z, double tau, double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw DomainError("walk: grid spacing must be > 0");
  if (tau == 0.0) {
    if (z != 0.0) throw DomainError("walk: tau = 0 requires z = 0");
    return {0.0, 0.0, delta, 0.0};
  }
  if (!(tau > 0.0) || !(z > 0.0) || !std::isfinite(tau) || !std::isfinite(z))
    throw DomainError("walk: need z > 0 and tau > 0");
  return {z * delta * delta / tau, tau, delta, z};
}

WalkParams WalkParams::from_diffusion(double b, double tau, double delta) {
  if (!(delta > 0.0) || !(b > 0.0) || !(tau > 0.0)) throw DomainError("walk: need b, tau, delta > 0");
  return {b, tau, delta, b * tau / (delta * delta)};
}

WalkOperator::WalkOperator(const GridDomain& domain, const WalkParams& params, std::vector<double> potential)
    : n_(domain.size()), params_(params), potential_(std::move(potential)) {
  check_potential(domain, potential_.size());
  const int span = static_cast<int>(n_) - 1;
  bessel_ = specfun::bessel_j_row(-span, span, params_.z);
  phase_ = std::polar(1.0, -params_.z);

  coeffs_.resize(2 * n_ - 1);
  for (int d = -span; d <= span; ++d)
    coeffs_[static_cast<std::size_t>(d + span)] = i_pow(d) * phase_ * bessel_[d];

  for (std::size_t j = 0; j < n_; ++j)
    if (!std::isfinite(potential_[j])) throw DomainError("walk: potential is not finite at state " + std::to_string(j));
  const double v_min = *std::min_element(potential_.begin(), potential_.end());
  relative_damping_.resize(n_);
  for (std::size_t j = 0; j < n_; ++j) relative_damping_[j] = std::exp(-(potential_[j] - v_min) * params_.tau);
  if (-v_min * params_.tau <= kMaxExponent) {
    damping_.resize(n_);
    for (std::size_t j = 0; j < n_; ++j) damping_[j] = std::exp(-potential_[j] * params_.tau);
  }
}

std::span<const double> WalkOperator::damping() const {
  if (damping_.empty()) throw NumericalFailure("walk: absolute damping e^{-V tau} overflows");
  return damping_;
}

Eigen::MatrixXcd WalkOperator::dense() const {
  const auto n = static_cast<Eigen::Index>(n_);
  Eigen::MatrixXcd u(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k)
      u(j, k) = entry(static_cast<std::size_t>(j), static_cast<std::size_t>(k));
  return u;
}

Eigen::MatrixXcd build_hamiltonian(const GridDomain& domain, double b, std::span<const double> potential) {
  check_potential(domain, potential.size());
  const auto n = static_cast<Eigen::Index>(domain.size());
  const double hop = b / (domain.delta() * domain.delta());
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    h(k, k) = cplx{hop, -potential[static_cast<std::size_t>(k)]};
    if (k + 1 < n) {
      h(k, k + 1) = -0.5 * hop;
      h(k + 1, k) = -0.5 * hop;
    }
  }
  return h;
}

WalkOperator build_walk_operator(const GridDomain& domain, const WalkParams& params,
                                 std::vector<double> potential) {
  return WalkOperator(domain, params, std::move(potential));
}

namespace {

QuantumState propagate(const WalkOperator& op, const QuantumState& state, std::span<const double> damping) {
  const std::size_t n = op.size();
  if (state.size() != n) throw DomainError("apply_walk: state/operator size mismatch");

  QuantumState out(state.domain());
  const std::span<const cplx> in = state.amplitudes();
  const cplx* coeffs = op.coefficients().data();
  // Column form: out += psi_k * u(., k); column k of the Toeplitz factor is
  // the contiguous slice starting at coefficient index (N-1) - k.
  for (std::size_t k = 0; k < n; ++k) {
    if (in[k] == cplx{0.0, 0.0}) continue;
    simd::caxpy(in[k], {coeffs + (n - 1 - k), n}, out.amplitudes());
  }
  simd::scale_by_real(damping, out.amplitudes());

  const double mass = out.norm_sq();
  if (!(mass > 0.0) || !std::isfinite(mass))
    throw NumericalFailure("apply_walk: output state has zero or non-finite norm");
  return out;
}

}  // namespace

QuantumState apply_walk(const WalkOperator& op, const QuantumState& state) {
  return propagate(op, state, op.damping());
}

QuantumState apply_walk_normalized(const WalkOperator& op, const QuantumState& state) {
  return normalize(propagate(op, state, op.relative_damping()));
}

std::vector<double> walk_probability_closed_form(const GridDomain& domain, const WalkParams& params,
                                                 std::span<const double> potential, std::size_t start) {
  check_potential(domain, potential.size());
  const std::size_t n = domain.size();
  if (start >= n) throw DomainError("walk_probability_closed_form: start index out of range");

  const int k = static_cast<int>(start);
  const specfun::BesselRow row = specfun::bessel_j_row(-k, static_cast<int>(n) - 1 - k, params.z);
  // e^{-2 V tau} shifted by the minimum potential; the shift cancels below.
  const double v_min = *std::min_element(potential.begin(), potential.end());

  std::vector<double> p(n);
  double total = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double jn = row[static_cast<int>(j) - k];
    p[j] = std::exp(-2.0 * (potential[j] - v_min) * params.tau) * jn * jn;
    total += p[j];
  }
  if (!(total > 0.0) || !std::isfinite(total))
    throw NumericalFailure("walk_probability_closed_form: zero probability mass");
  for (double& v : p) v /= total;
  return p;
}

bool qw_efficiency_bound(std::size_t m, std::size_t n, double threshold, int rotations,
                         const WalkParams& params, double j_l) {
  if (m < 1 || m > n) throw DomainError("qw_efficiency_bound: need 1 <= m <= N");
  if (rotations < 0) throw DomainError("qw_efficiency_bound: negative rotation count");
  if (std::abs(j_l) > 1.0) throw DomainError("qw_efficiency_bound: |J_L| must be <= 1");
  const double lhs = std::sqrt(static_cast<double>(m)) * std::exp(-threshold * params.tau) * std::abs(j_l);
  const double theta = std::asin(std::sqrt(static_cast<double>(m) / static_cast<double>(n)));
  const double rhs = std::sin((2.0 * rotations + 1.0) * theta);
  return lhs > rhs;
}

Moments moments(std::span<const double> p, std::span<const double> f) {
  if (p.size() != f.size()) throw DomainError("moments: size mismatch");
  Moments m;
  for (std::size_t j = 0; j < p.size(); ++j) m.mean += p[j] * f[j];
  for (std::size_t j = 0; j < p.size(); ++j) m.variance += p[j] * (f[j] - m.mean) * (f[j] - m.mean);
  return m;
}

}  // namespace qwgo::ctqw
