#include "qwgo/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <numbers>
#include <sstream>

#include "qwgo/error.hpp"

namespace qwgo::objectives {
namespace {

using std::numbers::pi;

double rastrigin_f(double x) { return 10.0 + x * x - 10.0 * std::cos(2.0 * pi * x); }

double schwefel_f(double x) { return -4.189829 + 30.0 * x * std::sin(std::sqrt(std::abs(30.0 * x))); }

double ackley_f(double x) {
  return -20.0 * std::exp(-0.2 * std::abs(4.0 * x)) - std::exp(std::cos(2.0 * pi * x));
}

// Dense scan of [lo, hi] followed by golden-section search in the bracket
// around the best sample.
double scan_minimizer(const std::function<double(double)>& f, double lo, double hi, int samples) {
  const double step = (hi - lo) / (samples - 1);
  int best = 0;
  double best_f = f(lo);
  for (int i = 1; i < samples; ++i) {
    const double v = f(lo + i * step);
    if (v < best_f) {
      best_f = v;
      best = i;
    }
  }
  double a = std::max(lo, lo + (best - 1) * step);
  double b = std::min(hi, lo + (best + 1) * step);
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a), d = a + g * (b - a);
  for (int it = 0; it < 200 && (b - a) > 1e-14 * std::max(1.0, std::abs(a)); ++it) {
    if (f(c) < f(d)) {
      b = d;
    } else {
      a = c;
    }
    c = b - g * (b - a);
    d = a + g * (b - a);
  }
  return 0.5 * (a + b);
}

ObjectiveSpec make_schwefel() {
  ObjectiveSpec s{"schwefel", schwefel_f, -15.0, 15.0, 0.0, 0.0};
  s.known_optimum_x = scan_minimizer(s.f, s.x_lo, s.x_hi, 1'000'001);
  s.known_optimum_f = s.f(s.known_optimum_x);
  return s;
}

}  // namespace

const ObjectiveSpec& rastrigin() {
  static const ObjectiveSpec s{"rastrigin", rastrigin_f, -5.0, 5.0, 0.0, 0.0};
  return s;
}

const ObjectiveSpec& schwefel() {
  static const ObjectiveSpec s = make_schwefel();
  return s;
}

const ObjectiveSpec& ackley() {
  static const ObjectiveSpec s{"ackley", ackley_f, -5.0, 5.0, 0.0, -20.0 - std::numbers::e};
  return s;
}

std::vector<std::string> builtin_names() { return {"rastrigin", "schwefel", "ackley"}; }

const ObjectiveSpec& by_name(const std::string& name) {
  if (name == "rastrigin") return rastrigin();
  if (name == "schwefel") return schwefel();
  if (name == "ackley") return ackley();
  throw UsageError("unknown objective '" + name + "' (expected rastrigin | schwefel | ackley)");
}

ObjectiveSpec tabulated(const std::string& name, const GridDomain& domain, std::vector<double> values) {
  if (values.size() != domain.size())
    throw UsageError("tabulated objective needs exactly " + std::to_string(domain.size()) + " values");
  const GridMin best = grid_argmin(values);
  auto table = std::make_shared<const std::vector<double>>(std::move(values));
  ObjectiveSpec s;
  s.name = name;
  s.f = [table, domain](double x) { return (*table)[domain.nearest_index(x)]; };
  s.x_lo = domain.x_lo();
  s.x_hi = domain.x_hi();
  s.known_optimum_x = domain.coordinate(best.index);
  s.known_optimum_f = best.value;
  return s;
}

ObjectiveSpec load_table(const std::string& path, const GridDomain& domain) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open objective table '" + path + "'");
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1 && line.rfind("x", 0) == 0) continue;  // header
    std::istringstream row(line);
    std::string xs, fs;
    if (!std::getline(row, xs, ',') || !std::getline(row, fs))
      throw UsageError(path + ":" + std::to_string(line_no) + ": expected `x,f`");
    double x = 0.0, f = 0.0;
    try {
      x = std::stod(xs);
      f = std::stod(fs);
    } catch (const std::exception&) {
      throw UsageError(path + ":" + std::to_string(line_no) + ": non-numeric field");
    }
    const std::size_t j = values.size();
    if (j >= domain.size()) throw UsageError(path + ": more than " + std::to_string(domain.size()) + " rows");
    if (std::abs(x - domain.coordinate(j)) > 1e-6 * domain.delta())
      throw UsageError(path + ":" + std::to_string(line_no) + ": x does not match grid point " +
                       std::to_string(j));
    values.push_back(f);
  }
  if (values.size() != domain.size())
    throw UsageError(path + ": expected " + std::to_string(domain.size()) + " rows, got " +
                     std::to_string(values.size()));
  return tabulated("table", domain, std::move(values));
}

double evaluate(const ObjectiveSpec& spec, double x) {
  const double v = spec.f(x);
  if (!std::isfinite(v)) throw NumericalFailure(spec.name + ": non-finite value at x = " + std::to_string(x));
  return v;
}

std::vector<double> grid_values(const ObjectiveSpec& spec, const GridDomain& domain) {
  std::vector<double> v(domain.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = evaluate(spec, domain.coordinate(j));
  return v;
}

GridMin grid_argmin(std::span<const double> values) {
  if (values.empty()) throw DomainError("grid_argmin: empty input");
  GridMin best{0, values[0]};
  for (std::size_t j = 1; j < values.size(); ++j)
    if (values[j] < best.value) best = {j, values[j]};
  return best;
}

std::array<int, 3> fixedpoint_eval_exp(int x1, int x2, int x3) {
  const bool a = x1 != 0, b = x2 != 0, c = x3 != 0;
  const bool f1 = !(a && b && c);
  const bool f2 = (!a && !b) || (!a && b && !c) || (a && b && c);
  const bool f3 = (!a && (!b || (b && c))) || (a && !b && !c) || (a && b && c);
  return {f1 ? 1 : 0, f2 ? 1 : 0, f3 ? 1 : 0};
}

}  // namespace qwgo::objectives
