#include <atomic>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "qwgo/error.hpp"
#include "qwgo/experiments.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace qwgo;
using namespace qwgo::experiments;
using optimizer::Algorithm;

namespace {

void check_curve(const SuccessCurve& c) {
  double prev = 0.0;
  for (const auto& p : c.points) {
    CHECK(p.success_prob >= prev);
    CHECK(p.success_prob >= 0.0);
    CHECK(p.success_prob <= 1.0);
    CHECK(p.std_error == doctest::Approx(std::sqrt(p.success_prob * (1 - p.success_prob) / c.runs)));
    prev = p.success_prob;
  }
}

}  // namespace

TEST_CASE("parallel_for visits every index once and rethrows the lowest failure") {
  for (int jobs : {1, 3, 8}) {
    std::vector<std::atomic<int>> hits(100);
    parallel_for(100, jobs, [&](std::size_t i) { ++hits[i]; });
    for (auto& h : hits) CHECK(h.load() == 1);
    try {
      parallel_for(50, jobs, [](std::size_t i) {
        if (i == 7 || i == 30) throw std::runtime_error(std::to_string(i));
      });
      FAIL("expected an exception");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()) == "7");
    }
  }
}

TEST_CASE("curves from hand-built first-success data") {
  const std::vector<std::optional<long>> firsts{1, 3, 3, std::nullopt, 10};
  const auto c = evaluation_curve(firsts, 5);
  REQUIRE(c.points.size() == 5);
  CHECK(c.points[0].axis_value == 1.0);
  CHECK(c.at(0) == 0.0);
  CHECK(c.at(1) == doctest::Approx(0.2));
  CHECK(c.at(2) == doctest::Approx(0.2));
  CHECK(c.at(3) == doctest::Approx(0.6));
  CHECK(c.at(5) == doctest::Approx(0.6));
  check_curve(c);
  CHECK_THROWS_AS(evaluation_curve(std::vector<std::optional<long>>{}, 5), UsageError);
}

TEST_CASE("single-run curves are 0/1 step functions") {
  optimizer::RunConfig c;
  c.seed = 17;
  const auto p = optimizer::prepare(c);
  const auto traces = run_many(Algorithm::kBbwQw, p, c, 1, 1);
  for (const auto& curve : {iteration_curve(traces, 44), evaluation_curve(traces, max_evaluations(traces))})
    for (const auto& pt : curve.points) CHECK((pt.success_prob == 0.0 || pt.success_prob == 1.0));
}

TEST_CASE("run_many is independent of the worker count") {
  optimizer::RunConfig c;
  c.seed = 100;
  const auto p = optimizer::prepare(c);
  const auto a = run_many(Algorithm::kBbwQw, p, c, 12, 1);
  const auto b = run_many(Algorithm::kBbwQw, p, c, 12, 4);
  std::ostringstream sa, sb;
  for (const auto& t : a) write_trace_csv(sa, t);
  for (const auto& t : b) write_trace_csv(sb, t);
  CHECK(sa.str() == sb.str());
  // Run i uses seed + i.
  Rng rng(c.seed + 5);
  std::ostringstream single;
  write_trace_csv(single, optimizer::run(Algorithm::kBbwQw, p, c, rng));
  std::ostringstream fifth;
  write_trace_csv(fifth, a[5]);
  CHECK(single.str() == fifth.str());
}

TEST_CASE("iteration and evaluation curves agree with the traces") {
  optimizer::RunConfig c;
  const auto p = optimizer::prepare(c);
  const auto traces = run_many(Algorithm::kBbw, p, c, 60, 2);
  const auto it = iteration_curve(traces, 44);
  const auto ev = evaluation_curve(traces, max_evaluations(traces));
  check_curve(it);
  check_curve(ev);
  for (int i = 0; i < 44; ++i) {
    int hits = 0;
    for (const auto& t : traces) hits += t.first_success_iteration && *t.first_success_iteration <= i;
    CHECK(it.at(i) == doctest::Approx(hits / 60.0));
  }
  for (long e : {1L, 10L, 55L, 200L}) {
    int hits = 0;
    for (const auto& t : traces) hits += t.first_success_evals && *t.first_success_evals <= e;
    CHECK(ev.at(static_cast<double>(e)) == doctest::Approx(hits / 60.0));
  }
}

TEST_CASE("averaged PDFs") {
  optimizer::RunConfig c;
  const auto p = optimizer::prepare(c);
  const auto bbw = average_pdfs(Algorithm::kBbw, p, c, 20, 2);
  const auto qw = average_pdfs(Algorithm::kBbwQw, p, c, 20, 2);
  REQUIRE(bbw.size() == 44);
  REQUIRE(qw.size() == 44);
  for (const auto* set : {&bbw, &qw})
    for (const auto& pdf : *set) {
      double total = 0.0;
      for (double v : pdf.mean_probability) total += v;
      CHECK(std::fabs(total - 1.0) < 1e-9);
    }
  for (std::size_t i = 0; i < 44; ++i) {
    if (optimizer::kRotationSchedule[i] != 0) continue;
    for (double v : bbw[i].mean_probability) CHECK(std::fabs(v - 1.0 / 512) < 1e-12);
    CHECK(shannon_entropy(bbw[i].mean_probability) == doctest::Approx(std::log(512.0)).epsilon(1e-12));
  }
  double spread = 0.0;
  for (double v : qw[0].mean_probability) spread = std::max(spread, std::fabs(v - 1.0 / 512));
  CHECK(spread > 1e-3);
  // Same output regardless of worker count.
  const auto serial = average_pdfs(Algorithm::kBbwQw, p, c, 20, 1);
  for (std::size_t i = 0; i < 44; ++i) CHECK(serial[i].mean_probability == qw[i].mean_probability);
}

TEST_CASE("shannon entropy") {
  CHECK(shannon_entropy(std::vector<double>{1.0, 0.0}) == 0.0);
  CHECK(shannon_entropy(std::vector<double>{0.25, 0.25, 0.25, 0.25}) == doctest::Approx(std::log(4.0)));
  qwgo::testing::Gen gen(61);
  std::vector<double> p(37);
  double total = 0.0;
  for (auto& x : p) total += (x = gen.real(0.0, 1.0));
  for (auto& x : p) x /= total;
  CHECK(shannon_entropy(p) == doctest::Approx(qwgo::testing::entropy_of(p)).epsilon(1e-14));
}

TEST_CASE("format_double") {
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(-0.0) == "0");
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(-5.0) == "-5");
  CHECK(std::stod(format_double(M_PI)) == M_PI);
}

TEST_CASE("CSV writers") {
  SuccessCurve c;
  c.algorithm = "bbw-qw";
  c.objective = "rastrigin";
  c.r0 = 2;
  c.axis = Axis::kEvaluations;
  c.runs = 4;
  c.points = {{1, 0.25, std::sqrt(0.25 * 0.75 / 4)}};
  SuccessCurve b = c;
  b.algorithm = "sa_t0_100";
  b.r0.reset();
  std::ostringstream out;
  write_curves_csv(out, std::vector<SuccessCurve>{c, b});
  CHECK(out.str() ==
        "algorithm,objective,r0,axis,axis_value,success_prob,stderr,runs\n"
        "bbw-qw,rastrigin,2,evaluations,1,0.25,0.21650635094610965,4\n"
        "sa_t0_100,rastrigin,,evaluations,1,0.25,0.21650635094610965,4\n");

  const GridDomain d(0.0, 1.0, 1);
  std::ostringstream pdf;
  write_pdf_csv(pdf, d, std::vector<AveragePdf>{{3, {0.75, 0.25}}});
  CHECK(pdf.str() == "iteration,state_index,x,mean_probability\n3,0,0,0.75\n3,1,0.5,0.25\n");

  std::ostringstream svg;
  write_curves_svg(svg, std::vector<SuccessCurve>{c});
  CHECK(svg.str().find("<svg") == 0);
  CHECK(svg.str().find("polyline") != std::string::npos);
  std::ostringstream psvg;
  write_pdf_svg(psvg, d, std::vector<AveragePdf>{{0, {0.5, 0.5}}});
  CHECK(psvg.str().find("</svg>") != std::string::npos);
}

TEST_CASE("trace CSV has the documented header and one row per iteration") {
  optimizer::RunConfig c;
  c.seed = 42;
  Rng rng(c.seed);
  const auto t = optimizer::run(Algorithm::kBbwQw, optimizer::prepare(c), c, rng);
  std::ostringstream out;
  write_trace_csv(out, t);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "iteration,step_kind,rotations,cum_evals,sample_index,sample_x,sample_f,threshold_c,best_x,best_f,success");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 44);
}
