#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qwgo/ctqw.hpp"
#include "qwgo/objectives.hpp"
#include "qwgo/rng.hpp"
#include "qwgo/statevector.hpp"

namespace qwgo::optimizer {

// Static rotation-count sequence of the BBW optimizer, one entry per search
// iteration.
inline constexpr std::array<int, 44> kRotationSchedule = {
    0, 0, 0, 0,  1,  1,  0,  1,  1, 2,  1,  2,  3,  1,   4,   5, 1,   6,  2,   7,   9,   11,
    13, 16, 5, 20, 24, 28, 34, 2, 41, 49, 4, 60, 72, 9, 88, 105, 125, 3, 149, 22, 183, 219};

// Rotation count for iteration i; past the end the last entry repeats.
int scheduled_rotations(int iteration);

enum class Algorithm { kBbw, kBbwQw };
enum class StepKind { kWalk, kGrover, kUniform };
enum class StartPolicy { kCurrentBest, kRandom, kCenter };

std::string_view to_string(Algorithm a);
std::string_view to_string(StepKind k);
std::string_view to_string(StartPolicy p);
Algorithm parse_algorithm(std::string_view s);
StartPolicy parse_start_policy(std::string_view s);

struct RunConfig {
  std::string objective = "rastrigin";
  std::optional<std::pair<double, double>> domain;  // defaults to the objective's
  int qubits = 9;
  // Iterations whose scheduled rotation count is <= r0 take a walk step.
  // -1 disables walks, including the initial one.
  int r0 = 2;
  std::optional<double> spread;  // z; defaults to N / 2
  double tau = ctqw::kDefaultTau;
  std::uint64_t seed = 0;
  int max_iter = static_cast<int>(kRotationSchedule.size());
  double success_tolerance = 1e-4;
  StartPolicy start_policy = StartPolicy::kCurrentBest;
  bool early_stop_on_success = false;
  // b(t) hook: maps (iteration, base b) to the diffusion coefficient used for
  // that iteration's walk. Unset means constant b. The initial walk uses
  // iteration -1.
  std::function<double(int, double)> diffusion_schedule;

  // Throws UsageError on inconsistent values.
  void validate() const;
};

// Everything about a configuration that is shared by all of its runs.
struct Problem {
  objectives::ObjectiveSpec objective;
  GridDomain domain;
  std::vector<double> values;  // f(x_j) on the grid
  std::size_t target_index;    // grid argmin: the optimum the quantum search can hit
  double target_x;
  ctqw::WalkParams walk;
  std::shared_ptr<const ctqw::WalkOperator> walk_operator;
};

// Resolves the objective by name (builtins only).
Problem prepare(const RunConfig& config);
Problem prepare(const RunConfig& config, const objectives::ObjectiveSpec& objective);

struct StepRecord {
  int iteration = 0;  // -1 for the initial step
  StepKind kind = StepKind::kUniform;
  int rotations = 0;
  std::size_t sample_index = 0;
  double sample_x = 0.0;
  double sample_f = 0.0;
  double threshold = 0.0;
  double best_x = 0.0;
  double best_f = 0.0;
  long cum_evals = 0;
  bool success = false;
};

struct RunTrace {
  Algorithm algorithm = Algorithm::kBbw;
  StepRecord initial;
  std::vector<StepRecord> steps;
  long total_evals = 0;
  // Loop iteration whose record first reports success (0 when the initial
  // sample already succeeded) and the evaluation count of the measurement
  // that found it.
  std::optional<int> first_success_iteration;
  std::optional<long> first_success_evals;
  std::optional<std::string> failure;
};

// Cost model: one unit per measurement, per Grover rotation and per walk
// step; Hadamard initialization is free.
long evaluation_count(StepKind kind, int rotations);

// Called with the pre-measurement distribution of every loop iteration.
using PdfObserver = std::function<void(int iteration, std::span<const double> probabilities)>;

RunTrace run_bbw_qw(const Problem& problem, const RunConfig& config, Rng& rng,
                    const PdfObserver& observer = {});
RunTrace run_bbw(const Problem& problem, const RunConfig& config, Rng& rng,
                 const PdfObserver& observer = {});
RunTrace run(Algorithm algorithm, const Problem& problem, const RunConfig& config, Rng& rng,
             const PdfObserver& observer = {});

RunTrace run_bbw_qw(const RunConfig& config, Rng& rng);
RunTrace run_bbw(const RunConfig& config, Rng& rng);

}  // namespace qwgo::optimizer
