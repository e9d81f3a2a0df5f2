#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qwgo/baselines.hpp"
#include "qwgo/optimizer.hpp"

namespace qwgo::experiments {

enum class Axis { kIterations, kEvaluations };
std::string_view to_string(Axis a);

struct CurvePoint {
  double axis_value = 0.0;
  double success_prob = 0.0;
  double std_error = 0.0;
};

// Fraction of runs that have located the optimum, as a function of
// iterations or cumulative evaluations.
struct SuccessCurve {
  std::string algorithm;
  std::string objective;
  std::optional<int> r0;
  Axis axis = Axis::kIterations;
  std::vector<CurvePoint> points;
  int runs = 0;

  // Success probability at the given axis value (0 before the first point).
  double at(double axis_value) const;
};

// Mean pre-measurement distribution of one loop iteration over many runs.
struct AveragePdf {
  int iteration = 0;
  std::vector<double> mean_probability;
};

int default_jobs();

// Runs body(i) for i in [0, count) on up to `jobs` threads. Exceptions from
// body are rethrown on the caller (the one with the lowest index wins).
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& body);

// `runs` independent runs with seeds config.seed + i, ordered by run index.
std::vector<optimizer::RunTrace> run_many(optimizer::Algorithm algorithm, const optimizer::Problem& problem,
                                          const optimizer::RunConfig& config, int runs, int jobs);

// p(i) = fraction of runs whose first success came at loop iteration <= i.
SuccessCurve iteration_curve(std::span<const optimizer::RunTrace> traces, int iterations);

// p(e) = fraction of runs whose first success used <= e evaluations, for
// e = 1..budget.
SuccessCurve evaluation_curve(std::span<const std::optional<long>> first_success_evals, long budget);
SuccessCurve evaluation_curve(std::span<const optimizer::RunTrace> traces, long budget);

// Largest total evaluation count among the traces.
long max_evaluations(std::span<const optimizer::RunTrace> traces);

std::vector<AveragePdf> average_pdfs(optimizer::Algorithm algorithm, const optimizer::Problem& problem,
                                     const optimizer::RunConfig& config, int runs, int jobs);

// Shannon entropy in nats; zero entries contribute nothing.
double shannon_entropy(std::span<const double> p);

// First-success evaluation counts of `runs` seeded baseline runs.
std::vector<std::optional<long>> sa_first_successes(const objectives::ObjectiveSpec& objective,
                                                    const baselines::SAConfig& config, double tolerance,
                                                    std::uint64_t seed, int runs, int jobs);
std::vector<std::optional<long>> ga_first_successes(const objectives::ObjectiveSpec& objective,
                                                    const baselines::GAConfig& config, double tolerance,
                                                    std::uint64_t seed, int runs, int jobs);

// CSV emitters. Doubles are written with 17 significant digits so files are
// byte-stable for a fixed configuration and seed.
void write_trace_csv(std::ostream& out, const optimizer::RunTrace& trace);
void write_curves_csv(std::ostream& out, std::span<const SuccessCurve> curves);
void write_pdf_csv(std::ostream& out, const GridDomain& domain, std::span<const AveragePdf> pdfs);

// Minimal SVG line plots.
void write_curves_svg(std::ostream& out, std::span<const SuccessCurve> curves);
void write_pdf_svg(std::ostream& out, const GridDomain& domain, std::span<const AveragePdf> pdfs);

std::string format_double(double v);

}  // namespace qwgo::experiments
