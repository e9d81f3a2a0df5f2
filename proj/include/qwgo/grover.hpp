#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qwgo/statevector.hpp"

namespace qwgo::grover {

// Marks grid states whose objective value is strictly below the threshold.
class ThresholdOracle {
 public:
  ThresholdOracle(std::vector<double> values, double threshold);

  std::span<const double> values() const { return values_; }
  double threshold() const { return threshold_; }
  std::span<const std::uint8_t> marked() const { return marked_; }
  bool is_marked(std::size_t j) const { return marked_[j] != 0; }
  std::size_t size() const { return values_.size(); }
  std::size_t solution_count() const { return count_; }

  // Re-marks against a new threshold without copying the values.
  void set_threshold(double threshold);

 private:
  std::vector<double> values_;
  double threshold_ = 0.0;
  std::vector<std::uint8_t> marked_;
  std::size_t count_ = 0;
};

std::size_t count_solutions(const ThresholdOracle& oracle);

// Selective phase shift: psi_j -> -psi_j on marked states.
void apply_oracle(QuantumState& state, const ThresholdOracle& oracle);

// Inversion about the mean amplitude: psi_j -> 2 mean(psi) - psi_j.
void apply_diffusion(QuantumState& state);

// r rounds of oracle followed by diffusion.
void grover_rotations(QuantumState& state, const ThresholdOracle& oracle, int rotations);

// sin^2((2r+1) asin(sqrt(m/N))). Throws DomainError for m = 0, m > N or r < 0.
double theoretical_success(std::size_t m, std::size_t n, int rotations);

// Total probability on marked states (state need not be normalized).
double marked_probability(const QuantumState& state, const ThresholdOracle& oracle);

}  // namespace qwgo::grover
