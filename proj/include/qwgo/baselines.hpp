#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qwgo/objectives.hpp"
#include "qwgo/rng.hpp"

namespace qwgo::baselines {

using Bounds = std::pair<double, double>;

struct SAConfig {
  double t0 = 100.0;
  double cooling = 0.95;                // T_k = t0 * cooling^k
  std::optional<double> proposal_sigma;  // default (hi - lo) / 20
  long max_evals = 10'000;
  std::optional<Bounds> domain;          // default: the objective's domain

  void validate() const;
};

struct GAConfig {
  int population = 25;
  int tournament = 2;
  double crossover_rate = 0.9;
  double mutation_rate = 0.1;
  std::optional<double> mutation_sigma;  // default (hi - lo) / 10
  long max_evals = 10'000;
  std::optional<Bounds> domain;

  void validate() const;
};

// Best-so-far after each objective evaluation; points[e - 1] holds the state
// after e evaluations.
struct BestPoint {
  long evals = 0;
  double best_x = 0.0;
  double best_f = 0.0;
};

struct BaselineTrace {
  std::vector<BestPoint> points;

  // First evaluation count whose best_x is within tolerance of x_opt.
  std::optional<long> first_success(double x_opt, double tolerance) const;
};

// min(1, exp(-delta_f / T)).
double metropolis_acceptance(double delta_f, double temperature);

BaselineTrace run_sa(const objectives::ObjectiveSpec& objective, const SAConfig& config, Rng& rng);

// Generational GA: binary tournament selection, BLX-0.5 crossover, Gaussian
// mutation, one elite carried over.
BaselineTrace run_ga(const objectives::ObjectiveSpec& objective, const GAConfig& config, Rng& rng);

}  // namespace qwgo::baselines
