#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "qwgo/statevector.hpp"

namespace qwgo::objectives {

struct ObjectiveSpec {
  std::string name;
  std::function<double(double)> f;
  double x_lo = 0.0;
  double x_hi = 0.0;
  double known_optimum_x = 0.0;
  double known_optimum_f = 0.0;
};

// 10 + x^2 - 10 cos(2 pi x) on [-5, 5]; minimum 0 at x = 0.
const ObjectiveSpec& rastrigin();
// -4.189829 + 30 x sin(sqrt|30 x|) on [-15, 15]; the minimizer near -14.03 is
// located by a dense scan plus golden-section refinement on first use.
const ObjectiveSpec& schwefel();
// -20 exp(-0.2 |4x|) - exp(cos(2 pi x)) on [-5, 5]; minimum -20 - e at 0.
const ObjectiveSpec& ackley();

// rastrigin | schwefel | ackley. Throws UsageError on anything else.
const ObjectiveSpec& by_name(const std::string& name);
std::vector<std::string> builtin_names();

// Objective defined only on the grid: f(x) is the tabulated value at the
// nearest grid point. The known optimum is the tabulated minimum.
ObjectiveSpec tabulated(const std::string& name, const GridDomain& domain, std::vector<double> values);

// Reads a `x,f` CSV with exactly N rows whose x column matches the grid.
// Throws UsageError on malformed input.
ObjectiveSpec load_table(const std::string& path, const GridDomain& domain);

// Throws NumericalFailure when the value is not finite.
double evaluate(const ObjectiveSpec& spec, double x);

std::vector<double> grid_values(const ObjectiveSpec& spec, const GridDomain& domain);

struct GridMin {
  std::size_t index = 0;
  double value = 0.0;
};

// Lowest value; ties go to the lowest index. Throws DomainError on empty input.
GridMin grid_argmin(std::span<const double> values);

// Three-qubit boolean realization of e^{-x} for x = 0.x1x2x3, output 0.f1f2f3.
std::array<int, 3> fixedpoint_eval_exp(int x1, int x2, int x3);

}  // namespace qwgo::objectives
