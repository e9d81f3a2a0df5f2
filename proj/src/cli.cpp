#include "qwgo/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "qwgo/baselines.hpp"
#include "qwgo/error.hpp"
#include "qwgo/experiments.hpp"
#include "qwgo/optimizer.hpp"
#include "qwgo/simd.hpp"
#include "qwgo/validate.hpp"

namespace qwgo::cli {
namespace {

using optimizer::Algorithm;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) parts.push_back(item);
  return parts;
}

template <class T>
std::vector<T> parse_list(const std::string& s, const char* what) {
  std::vector<T> out;
  for (const std::string& item : split(s, ',')) {
    try {
      std::size_t used = 0;
      if constexpr (std::is_integral_v<T>) {
        out.push_back(static_cast<T>(std::stoll(item, &used)));
      } else {
        out.push_back(static_cast<T>(std::stod(item, &used)));
      }
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(std::string("bad ") + what + " list entry '" + item + "'");
    }
  }
  if (out.empty()) throw UsageError(std::string("empty ") + what + " list");
  return out;
}

std::pair<double, double> parse_domain(const std::string& s) {
  const auto colon = s.find(':', s[0] == '-' ? 1 : 0);
  if (colon == std::string::npos) throw UsageError("--domain expects <lo>:<hi>");
  try {
    const double lo = std::stod(s.substr(0, colon));
    const double hi = std::stod(s.substr(colon + 1));
    if (!(hi > lo)) throw UsageError("--domain needs lo < hi");
    return {lo, hi};
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception&) {
    throw UsageError("--domain expects <lo>:<hi>");
  }
}

// Flags shared by every optimizer-driven subcommand.
struct ProblemFlags {
  std::string objective = "rastrigin";
  std::string domain;
  std::string table;
  int qubits = 9;
  double tau = ctqw::kDefaultTau;
  double z = 0.0;  // 0 = N / 2
  std::uint64_t seed = 0;
  int max_iter = static_cast<int>(optimizer::kRotationSchedule.size());
  double tolerance = 1e-4;
  std::string start_policy = "current-best";
  std::string out;
  std::string config;

  void attach(CLI::App& app) {
    app.add_option("--objective", objective, "rastrigin | schwefel | ackley");
    app.add_option("--domain", domain, "search interval <lo>:<hi>");
    app.add_option("--table", table, "tabulated objective CSV (x,f) matching the grid");
    app.add_option("--qubits", qubits, "register size q (N = 2^q)");
    app.add_option("--tau", tau, "walk time step");
    app.add_option("--z", z, "walk spread b*tau/delta^2 (default N/2)");
    app.add_option("--seed", seed, "base seed");
    app.add_option("--max-iter", max_iter, "search iterations");
    app.add_option("--tolerance", tolerance, "success distance to the optimum");
    app.add_option("--start-policy", start_policy, "current-best | random | center");
    app.add_option("--config", config, "flat JSON of flag values; flags win");
  }

  optimizer::RunConfig run_config(int r0) const {
    optimizer::RunConfig c;
    c.objective = objective;
    if (!domain.empty()) c.domain = parse_domain(domain);
    c.qubits = qubits;
    c.r0 = r0;
    if (z > 0.0) c.spread = z;
    c.tau = tau;
    c.seed = seed;
    c.max_iter = max_iter;
    c.success_tolerance = tolerance;
    c.start_policy = optimizer::parse_start_policy(start_policy);
    c.validate();
    return c;
  }

  objectives::ObjectiveSpec objective_spec(const optimizer::RunConfig& c) const {
    if (table.empty()) return objectives::by_name(objective);
    const auto& base = objectives::by_name(objective);
    const auto [lo, hi] = c.domain.value_or(std::pair{base.x_lo, base.x_hi});
    return objectives::load_table(table, GridDomain(lo, hi, qubits));
  }

  optimizer::Problem problem(const optimizer::RunConfig& c) const { return optimizer::prepare(c, objective_spec(c)); }
};

// Writes through `path`, or to `fallback` when path is "-".
void emit(const std::string& path, std::ostream& fallback, const std::function<void(std::ostream&)>& body) {
  if (path == "-") {
    body(fallback);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + path + "'");
  body(f);
}

// Applies `--config` JSON values to options that were not given on the
// command line.
void apply_config(CLI::App& sub, const std::string& path) {
  if (path.empty()) return;
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config '" + path + "': " + e.what());
  }
  if (!doc.is_object()) throw UsageError("config '" + path + "' must be a flat JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key == "config") continue;
    CLI::Option* opt = sub.get_option_no_throw("--" + key);
    if (opt == nullptr) throw UsageError("config '" + path + "': unknown key '" + key + "'");
    if (opt->count() > 0) continue;
    std::string text;
    if (value.is_string()) {
      text = value.get<std::string>();
    } else if (value.is_array()) {
      for (const auto& v : value) text += (text.empty() ? "" : ",") + (v.is_string() ? v.get<std::string>() : v.dump());
    } else if (value.is_object() || value.is_null()) {
      throw UsageError("config '" + path + "': key '" + key + "' must be a scalar or list");
    } else {
      text = value.dump();
    }
    opt->add_result(text);
    opt->run_callback();
  }
}

void print_failure(std::ostream& err, const optimizer::RunTrace& t) {
  err << "run failed: " << *t.failure << '\n';
}

int cmd_optimize(ProblemFlags& f, const std::string& algo, int r0, bool early_stop, std::ostream& out,
                 std::ostream& err) {
  optimizer::RunConfig c = f.run_config(r0);
  c.early_stop_on_success = early_stop;
  const optimizer::Problem p = f.problem(c);
  Rng rng(c.seed);
  const optimizer::RunTrace t = optimizer::run(optimizer::parse_algorithm(algo), p, c, rng);
  emit(f.out.empty() ? "trace.csv" : f.out, out, [&](std::ostream& o) { experiments::write_trace_csv(o, t); });
  if (t.failure) {
    print_failure(err, t);
    return kExitFailure;
  }
  return kExitOk;
}

int cmd_experiment(ProblemFlags& f, const std::string& algos, const std::string& r0s, int runs, int jobs,
                   long budget, const std::string& svg, std::ostream& out, std::ostream& err) {
  std::vector<experiments::SuccessCurve> curves;
  for (int r0 : parse_list<int>(r0s, "r0")) {
    const optimizer::RunConfig c = f.run_config(r0);
    const optimizer::Problem p = f.problem(c);
    for (const std::string& name : split(algos, ',')) {
      const Algorithm a = optimizer::parse_algorithm(name);
      const auto traces = experiments::run_many(a, p, c, runs, jobs);
      for (const auto& t : traces)
        if (t.failure) {
          print_failure(err, t);
          return kExitFailure;
        }
      auto by_iter = experiments::iteration_curve(traces, c.max_iter);
      auto by_eval = experiments::evaluation_curve(traces, budget > 0 ? budget : experiments::max_evaluations(traces));
      for (auto* curve : {&by_iter, &by_eval}) {
        curve->algorithm = std::string(optimizer::to_string(a));
        curve->objective = p.objective.name;
        curve->r0 = r0;
        curves.push_back(std::move(*curve));
      }
    }
  }
  emit(f.out.empty() ? "curve.csv" : f.out, out, [&](std::ostream& o) { experiments::write_curves_csv(o, curves); });
  if (!svg.empty()) {
    std::vector<experiments::SuccessCurve> evals;
    for (const auto& c : curves)
      if (c.axis == experiments::Axis::kEvaluations) evals.push_back(c);
    emit(svg, out, [&](std::ostream& o) { experiments::write_curves_svg(o, evals); });
  }
  return kExitOk;
}

int cmd_pdf(ProblemFlags& f, const std::string& algo, int r0, int runs, int jobs, const std::string& svg,
            std::ostream& out) {
  const optimizer::RunConfig c = f.run_config(r0);
  const optimizer::Problem p = f.problem(c);
  const auto pdfs = experiments::average_pdfs(optimizer::parse_algorithm(algo), p, c, runs, jobs);
  emit(f.out.empty() ? "pdf.csv" : f.out, out,
       [&](std::ostream& o) { experiments::write_pdf_csv(o, p.domain, pdfs); });
  if (!svg.empty()) {
    // First few iterations carry the visible difference between algorithms.
    const std::size_t shown = std::min<std::size_t>(pdfs.size(), 6);
    emit(svg, out, [&](std::ostream& o) {
      experiments::write_pdf_svg(o, p.domain, std::span(pdfs).first(shown));
    });
  }
  return kExitOk;
}

int cmd_validate(const std::string& check, std::size_t n, double z, const std::string& out_path, std::ostream& out) {
  validate::Options o;
  if (!check.empty()) o.family = check;
  o.expm_size = n;
  o.expm_spread = z;
  const auto results = validate::run_checks(o);
  bool ok = true;
  std::ostringstream report;
  report << "simd backend: " << simd::backend_name(simd::active_backend()) << '\n';
  for (const auto& r : results) {
    ok = ok && r.passed;
    report << (r.passed ? "PASS " : "FAIL ") << r.family << '/' << r.name
           << " measured=" << experiments::format_double(r.measured)
           << " bound=" << experiments::format_double(r.tolerance);
    if (!r.detail.empty()) report << " (" << r.detail << ')';
    report << '\n';
  }
  report << (ok ? "all checks passed" : "validation FAILED") << '\n';
  out << report.str();
  if (!out_path.empty()) emit(out_path, out, [&](std::ostream& o) { o << report.str(); });
  return ok ? kExitOk : kExitFailure;
}

struct BaselineFlags {
  std::string method;
  std::string t0s = "100,1000";
  std::string pops = "5,25,50";
  double cooling = 0.95;
  double sigma = 0.0;
  int tournament = 2;
  double crossover = 0.9;
  double mutation = 0.1;
  long budget = 10'000;
  int runs = 200;
  int jobs = 0;
  std::string svg;
};

int cmd_baseline(ProblemFlags& f, const BaselineFlags& b, std::ostream& out) {
  if (b.method != "sa" && b.method != "ga") throw UsageError("--method must be sa or ga");
  const optimizer::RunConfig c = f.run_config(0);
  objectives::ObjectiveSpec spec = f.objective_spec(c);
  if (f.table.empty()) {
    if (c.domain) {
      spec.x_lo = c.domain->first;
      spec.x_hi = c.domain->second;
    }
  } else {
    const auto values = objectives::grid_values(spec, GridDomain(spec.x_lo, spec.x_hi, f.qubits));
    if (std::all_of(values.begin(), values.end(), [&](double v) { return v == values.front(); }))
      throw UsageError("objective is constant: success is undefined without a unique optimum");
  }
  if (spec.known_optimum_x < spec.x_lo || spec.known_optimum_x > spec.x_hi)
    throw UsageError("known optimum lies outside the baseline domain");

  const int jobs = b.jobs > 0 ? b.jobs : experiments::default_jobs();
  std::vector<experiments::SuccessCurve> curves;
  if (b.method == "sa") {
    for (double t0 : parse_list<double>(b.t0s, "t0")) {
      baselines::SAConfig sc;
      sc.t0 = t0;
      sc.cooling = b.cooling;
      if (b.sigma > 0.0) sc.proposal_sigma = b.sigma;
      sc.max_evals = b.budget;
      const auto firsts = experiments::sa_first_successes(spec, sc, c.success_tolerance, c.seed, b.runs, jobs);
      auto curve = experiments::evaluation_curve(firsts, b.budget);
      curve.algorithm = "sa_t0_" + experiments::format_double(t0);
      curve.objective = spec.name;
      curves.push_back(std::move(curve));
    }
  } else {
    for (int pop : parse_list<int>(b.pops, "pop")) {
      baselines::GAConfig gc;
      gc.population = pop;
      gc.tournament = b.tournament;
      gc.crossover_rate = b.crossover;
      gc.mutation_rate = b.mutation;
      if (b.sigma > 0.0) gc.mutation_sigma = b.sigma;
      gc.max_evals = b.budget;
      const auto firsts = experiments::ga_first_successes(spec, gc, c.success_tolerance, c.seed, b.runs, jobs);
      auto curve = experiments::evaluation_curve(firsts, b.budget);
      curve.algorithm = "ga_pop_" + std::to_string(pop);
      curve.objective = spec.name;
      curves.push_back(std::move(curve));
    }
  }
  emit(f.out.empty() ? "curve.csv" : f.out, out, [&](std::ostream& o) { experiments::write_curves_csv(o, curves); });
  if (!b.svg.empty()) emit(b.svg, out, [&](std::ostream& o) { experiments::write_curves_svg(o, curves); });
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Grover optimization with continuous-time quantum walks: statevector emulator and experiments",
               "qwgo"};
  app.require_subcommand(1);

  ProblemFlags opt_flags, exp_flags, pdf_flags, base_flags;
  std::string opt_algo = "bbw-qw", exp_algos = "bbw,bbw-qw", pdf_algo = "bbw-qw", exp_r0 = "2";
  int opt_r0 = 2, pdf_r0 = 2;
  bool early_stop = false;
  int exp_runs = 200, pdf_runs = 20, exp_jobs = 0, pdf_jobs = 0;
  long exp_budget = 0;
  std::string exp_svg, pdf_svg;

  auto* optimize = app.add_subcommand("optimize", "one seeded run, writes trace.csv");
  opt_flags.attach(*optimize);
  optimize->add_option("--algo", opt_algo, "bbw | bbw-qw");
  optimize->add_option("--r0", opt_r0, "rotation threshold (-1 disables walks)");
  optimize->add_flag("--early-stop", early_stop, "stop at the first success");
  optimize->add_option("--out", opt_flags.out, "output path ('-' for stdout)");

  auto* experiment = app.add_subcommand("experiment", "success-probability curves, writes curve.csv");
  exp_flags.attach(*experiment);
  experiment->add_option("--algo", exp_algos, "comma list of bbw | bbw-qw");
  experiment->add_option("--r0", exp_r0, "comma list of rotation thresholds");
  experiment->add_option("--runs", exp_runs, "runs per configuration");
  experiment->add_option("--jobs", exp_jobs, "worker threads (default: all cores)");
  experiment->add_option("--budget", exp_budget, "evaluation-axis length (default: longest run)");
  experiment->add_option("--svg", exp_svg, "also render the evaluation curves");
  experiment->add_option("--out", exp_flags.out, "output path ('-' for stdout)");

  auto* pdf = app.add_subcommand("pdf", "averaged pre-measurement PDFs, writes pdf.csv");
  pdf_flags.attach(*pdf);
  pdf->add_option("--algo", pdf_algo, "bbw | bbw-qw");
  pdf->add_option("--r0", pdf_r0, "rotation threshold");
  pdf->add_option("--runs", pdf_runs, "runs to average");
  pdf->add_option("--jobs", pdf_jobs, "worker threads");
  pdf->add_option("--svg", pdf_svg, "also render the first iterations");
  pdf->add_option("--out", pdf_flags.out, "output path ('-' for stdout)");

  std::string check, validate_out, validate_config;
  std::size_t check_n = 256;
  double check_z = 20.0;
  auto* val = app.add_subcommand("validate", "run the theory checks; exit 0 iff all pass");
  val->add_option("--check", check, "run one family only");
  val->add_option("--n", check_n, "grid size for the expm check");
  val->add_option("--z", check_z, "spread for the expm check");
  val->add_option("--out", validate_out, "also write the report here");
  val->add_option("--config", validate_config, "flat JSON of flag values; flags win");

  BaselineFlags bflags;
  auto* baseline = app.add_subcommand("baseline", "SA / GA success curves, writes curve.csv");
  base_flags.attach(*baseline);
  baseline->add_option("--method", bflags.method, "sa | ga")->required();
  baseline->add_option("--t0", bflags.t0s, "comma list of SA initial temperatures");
  baseline->add_option("--pop", bflags.pops, "comma list of GA population sizes");
  baseline->add_option("--cooling", bflags.cooling, "SA cooling ratio");
  baseline->add_option("--sigma", bflags.sigma, "proposal / mutation sigma");
  baseline->add_option("--tournament", bflags.tournament, "GA tournament size");
  baseline->add_option("--crossover", bflags.crossover, "GA crossover rate");
  baseline->add_option("--mutation", bflags.mutation, "GA mutation rate");
  baseline->add_option("--budget", bflags.budget, "evaluations per run");
  baseline->add_option("--runs", bflags.runs, "seeded runs");
  baseline->add_option("--jobs", bflags.jobs, "worker threads");
  baseline->add_option("--svg", bflags.svg, "also render the curves");
  baseline->add_option("--out", base_flags.out, "output path ('-' for stdout)");

  std::vector<std::string> argv_rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    const int exp_j = exp_jobs > 0 ? exp_jobs : experiments::default_jobs();
    const int pdf_j = pdf_jobs > 0 ? pdf_jobs : experiments::default_jobs();
    if (optimize->parsed()) {
      apply_config(*optimize, opt_flags.config);
      return cmd_optimize(opt_flags, opt_algo, opt_r0, early_stop, out, err);
    }
    if (experiment->parsed()) {
      apply_config(*experiment, exp_flags.config);
      return cmd_experiment(exp_flags, exp_algos, exp_r0, exp_runs, exp_j, exp_budget, exp_svg, out, err);
    }
    if (pdf->parsed()) {
      apply_config(*pdf, pdf_flags.config);
      return cmd_pdf(pdf_flags, pdf_algo, pdf_r0, pdf_runs, pdf_j, pdf_svg, out);
    }
    if (val->parsed()) {
      apply_config(*val, validate_config);
      return cmd_validate(check, check_n, check_z, validate_out, out);
    }
    apply_config(*baseline, base_flags.config);
    return cmd_baseline(base_flags, bflags, out);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace qwgo::cli
