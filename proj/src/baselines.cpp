#include "qwgo/baselines.hpp"

#include <algorithm>
#include <cmath>

#include "qwgo/error.hpp"

namespace qwgo::baselines {
namespace {

Bounds bounds_of(const objectives::ObjectiveSpec& objective, const std::optional<Bounds>& override) {
  const Bounds b = override.value_or(Bounds{objective.x_lo, objective.x_hi});
  if (!(b.second > b.first)) throw UsageError("baseline domain needs lo < hi");
  return b;
}

// Tracks best-so-far and appends one point per evaluation.
class Recorder {
 public:
  Recorder(const objectives::ObjectiveSpec& objective, long budget) : objective_(objective), budget_(budget) {
    trace_.points.reserve(static_cast<std::size_t>(budget));
  }

  bool exhausted() const { return evals_ >= budget_; }

  double evaluate(double x) {
    const double f = objectives::evaluate(objective_, x);
    ++evals_;
    if (evals_ == 1 || f < best_f_) {
      best_f_ = f;
      best_x_ = x;
    }
    trace_.points.push_back({evals_, best_x_, best_f_});
    return f;
  }

  BaselineTrace take() { return std::move(trace_); }

 private:
  const objectives::ObjectiveSpec& objective_;
  long budget_;
  long evals_ = 0;
  double best_x_ = 0.0;
  double best_f_ = 0.0;
  BaselineTrace trace_;
};

double clip(double x, const Bounds& b) { return std::clamp(x, b.first, b.second); }

}  // namespace

void SAConfig::validate() const {
  if (!(t0 > 0.0)) throw UsageError("SA: T0 must be > 0");
  if (!(cooling > 0.0 && cooling < 1.0)) throw UsageError("SA: cooling ratio must be in (0, 1)");
  if (proposal_sigma && !(*proposal_sigma > 0.0)) throw UsageError("SA: proposal sigma must be > 0");
  if (max_evals < 1) throw UsageError("SA: evaluation budget must be >= 1");
}

void GAConfig::validate() const {
  if (population < 2) throw UsageError("GA: population must be >= 2");
  if (tournament < 1) throw UsageError("GA: tournament size must be >= 1");
  if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0)) throw UsageError("GA: crossover rate must be in [0, 1]");
  if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0)) throw UsageError("GA: mutation rate must be in [0, 1]");
  if (mutation_sigma && !(*mutation_sigma > 0.0)) throw UsageError("GA: mutation sigma must be > 0");
  if (max_evals < 1) throw UsageError("GA: evaluation budget must be >= 1");
}

std::optional<long> BaselineTrace::first_success(double x_opt, double tolerance) const {
  for (const BestPoint& p : points)
    if (std::abs(p.best_x - x_opt) < tolerance) return p.evals;
  return std::nullopt;
}

double metropolis_acceptance(double delta_f, double temperature) {
  if (delta_f <= 0.0) return 1.0;
  return std::exp(-delta_f / temperature);
}

BaselineTrace run_sa(const objectives::ObjectiveSpec& objective, const SAConfig& config, Rng& rng) {
  config.validate();
  const Bounds b = bounds_of(objective, config.domain);
  const double sigma = config.proposal_sigma.value_or((b.second - b.first) / 20.0);
  Recorder rec(objective, config.max_evals);

  double x = b.first + rng.uniform() * (b.second - b.first);
  double fx = rec.evaluate(x);
  double temperature = config.t0;
  while (!rec.exhausted()) {
    const double y = clip(x + sigma * rng.normal(), b);
    const double fy = rec.evaluate(y);
    // Always draw the variate so the stream position depends only on the
    // evaluation count.
    const double u = rng.uniform();
    if (u < metropolis_acceptance(fy - fx, temperature)) {
      x = y;
      fx = fy;
    }
    temperature *= config.cooling;
  }
  return rec.take();
}

BaselineTrace run_ga(const objectives::ObjectiveSpec& objective, const GAConfig& config, Rng& rng) {
  config.validate();
  const Bounds b = bounds_of(objective, config.domain);
  const double sigma = config.mutation_sigma.value_or((b.second - b.first) / 10.0);
  const auto pop_size = static_cast<std::size_t>(config.population);
  Recorder rec(objective, config.max_evals);

  struct Individual {
    double x;
    double f;
  };
  std::vector<Individual> pop;
  pop.reserve(pop_size);
  for (std::size_t i = 0; i < pop_size && !rec.exhausted(); ++i) {
    const double x = b.first + rng.uniform() * (b.second - b.first);
    pop.push_back({x, rec.evaluate(x)});
  }

  auto tournament = [&]() -> const Individual& {
    std::size_t winner = rng.index(pop.size());
    for (int t = 1; t < config.tournament; ++t) {
      const std::size_t c = rng.index(pop.size());
      if (pop[c].f < pop[winner].f) winner = c;
    }
    return pop[winner];
  };

  std::vector<Individual> next;
  next.reserve(pop_size);
  while (!rec.exhausted()) {
    next.clear();
    const auto elite = std::min_element(pop.begin(), pop.end(),
                                        [](const Individual& a, const Individual& c) { return a.f < c.f; });
    next.push_back(*elite);
    while (next.size() < pop_size && !rec.exhausted()) {
      const Individual& p1 = tournament();
      const Individual& p2 = tournament();
      double child = p1.x;
      if (rng.uniform() < config.crossover_rate) {
        const double lo = std::min(p1.x, p2.x), hi = std::max(p1.x, p2.x);
        const double ext = 0.5 * (hi - lo);
        child = clip(lo - ext + rng.uniform() * (hi - lo + 2.0 * ext), b);
      }
      if (rng.uniform() < config.mutation_rate) child = clip(child + sigma * rng.normal(), b);
      next.push_back({child, rec.evaluate(child)});
    }
    pop.swap(next);
  }
  return rec.take();
}

}  // namespace qwgo::baselines
