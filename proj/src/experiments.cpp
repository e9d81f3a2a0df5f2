#include "qwgo/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "qwgo/error.hpp"

namespace qwgo::experiments {

std::string_view to_string(Axis a) { return a == Axis::kIterations ? "iterations" : "evaluations"; }

double SuccessCurve::at(double axis_value) const {
  double p = 0.0;
  for (const CurvePoint& pt : points) {
    if (pt.axis_value > axis_value) break;
    p = pt.success_prob;
  }
  return p;
}

int default_jobs() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, jobs)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::size_t failed_index = count;
  std::exception_ptr failure;
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (i < failed_index) {
          failed_index = i;
          failure = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<optimizer::RunTrace> run_many(optimizer::Algorithm algorithm, const optimizer::Problem& problem,
                                          const optimizer::RunConfig& config, int runs, int jobs) {
  if (runs < 1) throw UsageError("runs must be >= 1");
  std::vector<optimizer::RunTrace> traces(static_cast<std::size_t>(runs));
  parallel_for(traces.size(), jobs, [&](std::size_t i) {
    Rng rng(config.seed + i);
    traces[i] = optimizer::run(algorithm, problem, config, rng);
  });
  return traces;
}

namespace {

CurvePoint point(double axis_value, std::size_t hits, std::size_t runs) {
  const double p = static_cast<double>(hits) / static_cast<double>(runs);
  return {axis_value, p, std::sqrt(p * (1.0 - p) / static_cast<double>(runs))};
}

}  // namespace

SuccessCurve iteration_curve(std::span<const optimizer::RunTrace> traces, int iterations) {
  if (traces.empty()) throw UsageError("iteration_curve: no runs");
  SuccessCurve c;
  c.axis = Axis::kIterations;
  c.runs = static_cast<int>(traces.size());
  std::vector<std::size_t> hits_at(static_cast<std::size_t>(iterations), 0);
  for (const optimizer::RunTrace& t : traces)
    if (t.first_success_iteration && *t.first_success_iteration < iterations)
      ++hits_at[static_cast<std::size_t>(*t.first_success_iteration)];
  std::size_t cum = 0;
  for (int i = 0; i < iterations; ++i) {
    cum += hits_at[static_cast<std::size_t>(i)];
    c.points.push_back(point(i, cum, traces.size()));
  }
  return c;
}

SuccessCurve evaluation_curve(std::span<const std::optional<long>> first_success_evals, long budget) {
  if (first_success_evals.empty()) throw UsageError("evaluation_curve: no runs");
  SuccessCurve c;
  c.axis = Axis::kEvaluations;
  c.runs = static_cast<int>(first_success_evals.size());
  std::vector<std::size_t> hits_at(static_cast<std::size_t>(std::max(budget, 0L)) + 1, 0);
  for (const auto& e : first_success_evals)
    if (e && *e <= budget) ++hits_at[static_cast<std::size_t>(std::max(*e, 0L))];
  std::size_t cum = hits_at[0];
  for (long e = 1; e <= budget; ++e) {
    cum += hits_at[static_cast<std::size_t>(e)];
    c.points.push_back(point(static_cast<double>(e), cum, first_success_evals.size()));
  }
  return c;
}

SuccessCurve evaluation_curve(std::span<const optimizer::RunTrace> traces, long budget) {
  std::vector<std::optional<long>> firsts;
  firsts.reserve(traces.size());
  for (const optimizer::RunTrace& t : traces) firsts.push_back(t.first_success_evals);
  return evaluation_curve(firsts, budget);
}

long max_evaluations(std::span<const optimizer::RunTrace> traces) {
  long m = 0;
  for (const optimizer::RunTrace& t : traces) m = std::max(m, t.total_evals);
  return m;
}

std::vector<AveragePdf> average_pdfs(optimizer::Algorithm algorithm, const optimizer::Problem& problem,
                                     const optimizer::RunConfig& config, int runs, int jobs) {
  if (runs < 1) throw UsageError("runs must be >= 1");
  const std::size_t n = problem.domain.size();
  const auto iters = static_cast<std::size_t>(config.max_iter);
  // Per-run sums kept separate so the reduction order is fixed by run index.
  std::vector<std::vector<std::vector<double>>> per_run(static_cast<std::size_t>(runs));
  std::vector<std::optional<std::string>> failures(static_cast<std::size_t>(runs));
  parallel_for(per_run.size(), jobs, [&](std::size_t r) {
    auto& slots = per_run[r];
    slots.assign(iters, {});
    Rng rng(config.seed + r);
    const optimizer::RunTrace trace = optimizer::run(
        algorithm, problem, config, rng, [&](int i, std::span<const double> p) {
          slots[static_cast<std::size_t>(i)].assign(p.begin(), p.end());
        });
    failures[r] = trace.failure;
  });
  for (const auto& f : failures)
    if (f) throw NumericalFailure("run failed: " + *f);

  std::vector<AveragePdf> out;
  for (std::size_t i = 0; i < iters; ++i) {
    AveragePdf avg{static_cast<int>(i), std::vector<double>(n, 0.0)};
    int count = 0;
    for (const auto& slots : per_run) {
      if (slots[i].empty()) continue;  // run stopped early
      for (std::size_t j = 0; j < n; ++j) avg.mean_probability[j] += slots[i][j];
      ++count;
    }
    if (count == 0) break;
    for (double& v : avg.mean_probability) v /= count;
    out.push_back(std::move(avg));
  }
  return out;
}

double shannon_entropy(std::span<const double> p) {
  double h = 0.0;
  for (double v : p)
    if (v > 0.0) h -= v * std::log(v);
  return h;
}

std::vector<std::optional<long>> sa_first_successes(const objectives::ObjectiveSpec& objective,
                                                    const baselines::SAConfig& config, double tolerance,
                                                    std::uint64_t seed, int runs, int jobs) {
  if (runs < 1) throw UsageError("runs must be >= 1");
  std::vector<std::optional<long>> out(static_cast<std::size_t>(runs));
  parallel_for(out.size(), jobs, [&](std::size_t i) {
    Rng rng(seed + i);
    out[i] = baselines::run_sa(objective, config, rng).first_success(objective.known_optimum_x, tolerance);
  });
  return out;
}

std::vector<std::optional<long>> ga_first_successes(const objectives::ObjectiveSpec& objective,
                                                    const baselines::GAConfig& config, double tolerance,
                                                    std::uint64_t seed, int runs, int jobs) {
  if (runs < 1) throw UsageError("runs must be >= 1");
  std::vector<std::optional<long>> out(static_cast<std::size_t>(runs));
  parallel_for(out.size(), jobs, [&](std::size_t i) {
    Rng rng(seed + i);
    out[i] = baselines::run_ga(objective, config, rng).first_success(objective.known_optimum_x, tolerance);
  });
  return out;
}

}  // namespace qwgo::experiments
