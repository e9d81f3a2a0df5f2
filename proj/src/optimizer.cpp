#include "qwgo/optimizer.hpp"

#include <cmath>

#include "qwgo/error.hpp"
#include "qwgo/grover.hpp"

namespace qwgo::optimizer {

int scheduled_rotations(int iteration) {
  const int last = static_cast<int>(kRotationSchedule.size()) - 1;
  return kRotationSchedule[static_cast<std::size_t>(std::min(std::max(iteration, 0), last))];
}

std::string_view to_string(Algorithm a) { return a == Algorithm::kBbw ? "bbw" : "bbw-qw"; }

std::string_view to_string(StepKind k) {
  switch (k) {
    case StepKind::kWalk: return "walk";
    case StepKind::kGrover: return "grover";
    default: return "uniform";
  }
}

std::string_view to_string(StartPolicy p) {
  switch (p) {
    case StartPolicy::kCurrentBest: return "current-best";
    case StartPolicy::kRandom: return "random";
    default: return "center";
  }
}

Algorithm parse_algorithm(std::string_view s) {
  if (s == "bbw") return Algorithm::kBbw;
  if (s == "bbw-qw") return Algorithm::kBbwQw;
  throw UsageError("unknown algorithm '" + std::string(s) + "' (expected bbw | bbw-qw)");
}

StartPolicy parse_start_policy(std::string_view s) {
  if (s == "current-best") return StartPolicy::kCurrentBest;
  if (s == "random") return StartPolicy::kRandom;
  if (s == "center") return StartPolicy::kCenter;
  throw UsageError("unknown walk start policy '" + std::string(s) + "'");
}

void RunConfig::validate() const {
  if (r0 < -1) throw UsageError("r0 must be >= 0 (or -1 to disable walks)");
  if (max_iter < 1) throw UsageError("max_iter must be >= 1");
  if (!(success_tolerance > 0.0)) throw UsageError("success tolerance must be > 0");
  if (qubits < 1 || qubits > kMaxQubits) throw UsageError("qubits out of range");
  if (!(tau >= 0.0) || !std::isfinite(tau)) throw UsageError("tau must be >= 0");
  if (spread && (!(*spread >= 0.0) || !std::isfinite(*spread))) throw UsageError("z must be >= 0");
  if (domain && !(domain->second > domain->first)) throw UsageError("domain needs lo < hi");
}

Problem prepare(const RunConfig& config) { return prepare(config, objectives::by_name(config.objective)); }

Problem prepare(const RunConfig& config, const objectives::ObjectiveSpec& objective) {
  config.validate();
  const auto [lo, hi] = config.domain.value_or(std::pair{objective.x_lo, objective.x_hi});
  GridDomain domain(lo, hi, config.qubits);
  std::vector<double> values = objectives::grid_values(objective, domain);
  const objectives::GridMin best = objectives::grid_argmin(values);
  const double z = config.spread.value_or(ctqw::default_spread(domain.size()));
  const ctqw::WalkParams walk = ctqw::WalkParams::from_spread(config.tau == 0.0 ? 0.0 : z, config.tau,
                                                              domain.delta());
  auto op = std::make_shared<const ctqw::WalkOperator>(domain, walk, values);
  return Problem{objective, domain,  std::move(values), best.index, domain.coordinate(best.index),
                 walk,      std::move(op)};
}

long evaluation_count(StepKind kind, int rotations) {
  switch (kind) {
    case StepKind::kWalk: return 2;
    case StepKind::kGrover: return static_cast<long>(rotations) + 1;
    default: return 1;
  }
}

namespace {

class SearchLoop {
 public:
  SearchLoop(Algorithm algorithm, const Problem& problem, const RunConfig& config, Rng& rng,
             const PdfObserver& observer)
      : problem_(problem),
        config_(config),
        rng_(rng),
        observer_(observer),
        walks_(algorithm == Algorithm::kBbwQw && config.r0 >= 0),
        oracle_(problem.values, 0.0) {
    trace_.algorithm = algorithm;
  }

  RunTrace run() {
    try {
      initial_step();
      for (int i = 0; i < config_.max_iter; ++i) {
        if (!iterate(i)) break;
      }
    } catch (const NumericalFailure& e) {
      trace_.failure = e.what();
    }
    trace_.total_evals = cum_evals_;
    return std::move(trace_);
  }

 private:
  void initial_step() {
    QuantumState state = walks_ ? walk_from(pick_start(), -1) : init_uniform(problem_.domain);
    const StepKind kind = walks_ ? StepKind::kWalk : StepKind::kUniform;
    cum_evals_ += evaluation_count(kind, 0);
    const std::size_t j = measure(state, rng_);
    best_ = j;
    threshold_ = problem_.values[j];
    trace_.initial = record(-1, kind, 0, j);
    note_success(trace_.initial, 0);
  }

  bool iterate(int i) {
    const int rotations = scheduled_rotations(i);
    StepKind kind;
    QuantumState state(problem_.domain);
    if (walks_ && rotations <= config_.r0) {
      kind = StepKind::kWalk;
      state = walk_from(pick_start(), i);
    } else {
      kind = rotations == 0 ? StepKind::kUniform : StepKind::kGrover;
      state = init_uniform(problem_.domain);
      if (rotations > 0) {
        oracle_.set_threshold(threshold_);
        grover::grover_rotations(state, oracle_, rotations);
      }
    }
    const int used = kind == StepKind::kGrover ? rotations : 0;
    cum_evals_ += evaluation_count(kind, used);
    if (observer_) {
      const std::vector<double> p = probabilities(state);
      observer_(i, p);
    }

    const std::size_t j = measure(state, rng_);
    if (problem_.values[j] < threshold_) {
      threshold_ = problem_.values[j];
      best_ = j;
    }
    trace_.steps.push_back(record(i, kind, used, j));
    note_success(trace_.steps.back(), i);
    return !(config_.early_stop_on_success && trace_.steps.back().success);
  }

  std::size_t pick_start() {
    switch (config_.start_policy) {
      case StartPolicy::kCenter: return problem_.domain.size() / 2;
      case StartPolicy::kRandom: return rng_.index(problem_.domain.size());
      default: return best_ ? *best_ : rng_.index(problem_.domain.size());
    }
  }

  QuantumState walk_from(std::size_t start, int iteration) {
    const ctqw::WalkOperator* op = problem_.walk_operator.get();
    if (config_.diffusion_schedule) {
      const double b = config_.diffusion_schedule(iteration, problem_.walk.b);
      if (b != problem_.walk.b) {
        if (!scheduled_ || scheduled_->params().b != b) {
          scheduled_ = std::make_unique<ctqw::WalkOperator>(
              problem_.domain, ctqw::WalkParams::from_diffusion(b, problem_.walk.tau, problem_.walk.delta),
              problem_.values);
        }
        op = scheduled_.get();
      }
    }
    return ctqw::apply_walk_normalized(*op, init_basis(problem_.domain, start));
  }

  StepRecord record(int iteration, StepKind kind, int rotations, std::size_t j) const {
    StepRecord r;
    r.iteration = iteration;
    r.kind = kind;
    r.rotations = rotations;
    r.sample_index = j;
    r.sample_x = problem_.domain.coordinate(j);
    r.sample_f = problem_.values[j];
    r.threshold = threshold_;
    r.best_x = problem_.domain.coordinate(*best_);
    r.best_f = problem_.values[*best_];
    r.cum_evals = cum_evals_;
    r.success = std::abs(r.best_x - problem_.target_x) < config_.success_tolerance;
    return r;
  }

  void note_success(const StepRecord& r, int iteration) {
    if (r.success && !trace_.first_success_iteration) {
      trace_.first_success_iteration = iteration;
      trace_.first_success_evals = r.cum_evals;
    }
  }

  const Problem& problem_;
  const RunConfig& config_;
  Rng& rng_;
  const PdfObserver& observer_;
  const bool walks_;
  grover::ThresholdOracle oracle_;
  std::unique_ptr<ctqw::WalkOperator> scheduled_;
  RunTrace trace_;
  std::optional<std::size_t> best_;
  double threshold_ = 0.0;
  long cum_evals_ = 0;
};

}  // namespace

RunTrace run(Algorithm algorithm, const Problem& problem, const RunConfig& config, Rng& rng,
             const PdfObserver& observer) {
  return SearchLoop(algorithm, problem, config, rng, observer).run();
}

RunTrace run_bbw_qw(const Problem& problem, const RunConfig& config, Rng& rng, const PdfObserver& observer) {
  return run(Algorithm::kBbwQw, problem, config, rng, observer);
}

RunTrace run_bbw(const Problem& problem, const RunConfig& config, Rng& rng, const PdfObserver& observer) {
  return run(Algorithm::kBbw, problem, config, rng, observer);
}

RunTrace run_bbw_qw(const RunConfig& config, Rng& rng) { return run_bbw_qw(prepare(config), config, rng); }

RunTrace run_bbw(const RunConfig& config, Rng& rng) { return run_bbw(prepare(config), config, rng); }

}  // namespace qwgo::optimizer
