#include <cmath>

#include "doctest.h"
#include "qwgo/baselines.hpp"
#include "qwgo/error.hpp"
#include "qwgo/experiments.hpp"
#include "qwgo/objectives.hpp"
#include "support/generators.hpp"

using namespace qwgo;
using namespace qwgo::baselines;

namespace {

const objectives::ObjectiveSpec& flat() {
  static const objectives::ObjectiveSpec spec{"flat", [](double) { return 2.0; }, -1.0, 1.0, 0.0, 2.0};
  return spec;
}

void check_best_so_far(const BaselineTrace& t, long budget) {
  REQUIRE(t.points.size() == static_cast<std::size_t>(budget));
  for (std::size_t i = 0; i < t.points.size(); ++i) {
    CHECK(t.points[i].evals == static_cast<long>(i + 1));
    if (i > 0) CHECK(t.points[i].best_f <= t.points[i - 1].best_f);
  }
}

bool same(const BaselineTrace& a, const BaselineTrace& b) {
  if (a.points.size() != b.points.size()) return false;
  for (std::size_t i = 0; i < a.points.size(); ++i)
    if (a.points[i].best_x != b.points[i].best_x || a.points[i].best_f != b.points[i].best_f) return false;
  return true;
}

}  // namespace

TEST_CASE("metropolis acceptance") {
  CHECK(metropolis_acceptance(-3.0, 10.0) == 1.0);
  CHECK(metropolis_acceptance(0.0, 10.0) == 1.0);
  CHECK(metropolis_acceptance(7.0, 7.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
}

TEST_CASE("config validation") {
  SAConfig sa;
  sa.cooling = 1.0;
  CHECK_THROWS_AS(sa.validate(), UsageError);
  sa = SAConfig{};
  sa.t0 = 0.0;
  CHECK_THROWS_AS(sa.validate(), UsageError);
  GAConfig ga;
  ga.population = 1;
  CHECK_THROWS_AS(ga.validate(), UsageError);
  ga = GAConfig{};
  ga.mutation_rate = 1.5;
  CHECK_THROWS_AS(ga.validate(), UsageError);
}

TEST_CASE("constant objective keeps best-f constant") {
  Rng rng(1);
  SAConfig sa;
  sa.max_evals = 300;
  const auto s = run_sa(flat(), sa, rng);
  check_best_so_far(s, 300);
  for (const auto& p : s.points) CHECK(p.best_f == 2.0);
  GAConfig ga;
  ga.max_evals = 300;
  const auto g = run_ga(flat(), ga, rng);
  for (const auto& p : g.points) CHECK(p.best_f == 2.0);
}

TEST_CASE("GA without variation never worsens its best") {
  GAConfig ga;
  ga.population = 2;
  ga.crossover_rate = 0.0;
  ga.mutation_rate = 0.0;
  ga.max_evals = 500;
  Rng rng(3);
  check_best_so_far(run_ga(objectives::rastrigin(), ga, rng), 500);
}

TEST_CASE("first success") {
  BaselineTrace t;
  t.points = {{1, 0.5, 1.0}, {2, 0.01, 0.1}, {3, 0.00005, 0.0}};
  CHECK(t.first_success(0.0, 1e-4) == 3);
  CHECK(t.first_success(0.0, 0.1) == 2);
  CHECK_FALSE(t.first_success(2.0, 1e-4).has_value());
}

TEST_CASE("property: both baselines are deterministic, in-domain and monotone") {
  qwgo::testing::Gen gen(51);
  for (int trial = 0; trial < 20; ++trial) {
    const auto& spec = objectives::by_name(objectives::builtin_names()[static_cast<std::size_t>(gen.integer(0, 2))]);
    const long budget = gen.integer(1, 400);
    const std::uint64_t seed = gen.seed();
    SAConfig sa;
    sa.t0 = gen.real(1.0, 2000.0);
    sa.cooling = gen.real(0.5, 0.999);
    sa.max_evals = budget;
    GAConfig ga;
    ga.population = gen.integer(2, 60);
    ga.tournament = gen.integer(1, 4);
    ga.max_evals = budget;
    Rng a(seed), b(seed), c(seed), d(seed);
    const auto s1 = run_sa(spec, sa, a), s2 = run_sa(spec, sa, b);
    const auto g1 = run_ga(spec, ga, c), g2 = run_ga(spec, ga, d);
    CHECK(same(s1, s2));
    CHECK(same(g1, g2));
    check_best_so_far(s1, budget);
    check_best_so_far(g1, budget);
    for (const auto* t : {&s1, &g1})
      for (const auto& p : t->points) {
        CHECK(p.best_x >= spec.x_lo);
        CHECK(p.best_x <= spec.x_hi);
        CHECK(p.best_f == spec.f(p.best_x));
      }
  }
}

TEST_CASE("GA Rastrigin success frequency over 200 seeds (regression)") {
  GAConfig ga;
  const auto first = experiments::ga_first_successes(objectives::rastrigin(), ga, 1e-4, 0, 200, 1);
  int successes = 0;
  for (const auto& f : first) successes += f.has_value();
  CHECK(successes == 200);
}
