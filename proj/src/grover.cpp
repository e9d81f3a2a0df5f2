#include "qwgo/grover.hpp"

#include <cmath>

#include "qwgo/error.hpp"
#include "qwgo/simd.hpp"

namespace qwgo::grover {

ThresholdOracle::ThresholdOracle(std::vector<double> values, double threshold)
    : values_(std::move(values)), marked_(values_.size(), 0) {
  set_threshold(threshold);
}

void ThresholdOracle::set_threshold(double threshold) {
  threshold_ = threshold;
  count_ = 0;
  for (std::size_t j = 0; j < values_.size(); ++j) {
    marked_[j] = values_[j] < threshold ? 1 : 0;
    count_ += marked_[j];
  }
}

std::size_t count_solutions(const ThresholdOracle& oracle) { return oracle.solution_count(); }

void apply_oracle(QuantumState& state, const ThresholdOracle& oracle) {
  if (state.size() != oracle.size()) throw DomainError("apply_oracle: state/oracle size mismatch");
  simd::negate_masked(oracle.marked(), state.amplitudes());
}

void apply_diffusion(QuantumState& state) {
  const cplx mean = simd::sum(state.amplitudes()) / static_cast<double>(state.size());
  simd::reflect(2.0 * mean, state.amplitudes());
}

void grover_rotations(QuantumState& state, const ThresholdOracle& oracle, int rotations) {
  if (rotations < 0) throw DomainError("grover_rotations: negative rotation count");
  if (state.size() != oracle.size()) throw DomainError("grover_rotations: state/oracle size mismatch");
  for (int r = 0; r < rotations; ++r) {
    apply_oracle(state, oracle);
    apply_diffusion(state);
  }
}

double theoretical_success(std::size_t m, std::size_t n, int rotations) {
  if (m == 0) throw DomainError("theoretical_success: m = 0 (no marked states)");
  if (m > n) throw DomainError("theoretical_success: m > N");
  if (rotations < 0) throw DomainError("theoretical_success: negative rotation count");
  const double theta = std::asin(std::sqrt(static_cast<double>(m) / static_cast<double>(n)));
  const double s = std::sin((2.0 * rotations + 1.0) * theta);
  return s * s;
}

double marked_probability(const QuantumState& state, const ThresholdOracle& oracle) {
  const auto p = probabilities(state);
  double total = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j)
    if (oracle.is_marked(j)) total += p[j];
  return total;
}

}  // namespace qwgo::grover
