#include <cmath>
#include <sstream>

#include "doctest.h"
#include "qwgo/ctqw.hpp"
#include "qwgo/error.hpp"
#include "qwgo/experiments.hpp"
#include "qwgo/simd.hpp"
#include "support/generators.hpp"

using namespace qwgo;

namespace {

bool avx2_available() { return simd::cpu_has_avx2() && simd::avx2::table() != nullptr; }

// Restores the process-wide backend when a test case ends.
struct BackendGuard {
  simd::Backend saved = simd::active_backend();
  ~BackendGuard() { simd::set_backend(saved); }
};

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("scalar kernels against plain loops") {
  const auto& k = simd::scalar::table();
  qwgo::testing::Gen gen(71);
  for (std::size_t n : {0, 1, 2, 3, 7, 64, 101}) {
    auto x = gen.amplitudes(n), y = gen.amplitudes(n);
    std::vector<double> d(n), out(n);
    std::vector<std::uint8_t> mask(n);
    for (std::size_t i = 0; i < n; ++i) {
      d[i] = gen.real(0.0, 3.0);
      mask[i] = gen.coin();
    }
    const cplx a{0.3, -1.2};
    auto expect = y;
    for (std::size_t i = 0; i < n; ++i) expect[i] += a * x[i];
    auto got = y;
    k.caxpy(a, x.data(), got.data(), n);
    CHECK(max_diff(got, expect) < 1e-15);

    double total = 0.0;
    cplx s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      total += std::norm(x[i]);
      s += x[i];
    }
    CHECK(k.total_norm_sq(x.data(), n) == doctest::Approx(total).epsilon(1e-14));
    CHECK(k.norm_sq(x.data(), out.data(), n) == doctest::Approx(total).epsilon(1e-14));
    for (std::size_t i = 0; i < n; ++i) CHECK(out[i] == doctest::Approx(std::norm(x[i])).epsilon(1e-15));
    CHECK(std::abs(k.sum(x.data(), n) - s) < 1e-13);

    got = x;
    k.scale_by_real(d.data(), got.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(got[i] - d[i] * x[i]) < 1e-15);
    got = x;
    k.reflect(a, got.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(got[i] - (a - x[i])) < 1e-15);
    got = x;
    k.negate_masked(mask.data(), got.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(got[i] == (mask[i] ? -x[i] : x[i]));
    got = x;
    k.scale(-2.5, got.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(got[i] == -2.5 * x[i]);
  }
}

TEST_CASE("property: AVX2 kernels match the scalar reference") {
  if (!avx2_available()) {
    MESSAGE("AVX2 unavailable; skipping");
    return;
  }
  const auto& s = simd::scalar::table();
  const auto& v = *simd::avx2::table();
  qwgo::testing::Gen gen(72);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = trial < 40 ? static_cast<std::size_t>(trial) : gen.index(2000);
    auto x = gen.amplitudes(n), y = gen.amplitudes(n);
    std::vector<double> d(n), o1(n), o2(n);
    std::vector<std::uint8_t> mask(n);
    for (std::size_t i = 0; i < n; ++i) {
      d[i] = gen.real(0.0, 5.0);
      mask[i] = gen.coin();
    }
    const cplx a{gen.real(-2, 2), gen.real(-2, 2)};
    INFO("n=" << n);

    auto y1 = y, y2 = y;
    s.caxpy(a, x.data(), y1.data(), n);
    v.caxpy(a, x.data(), y2.data(), n);
    CHECK(max_diff(y1, y2) < 1e-13);

    y1 = x, y2 = x;
    s.scale_by_real(d.data(), y1.data(), n);
    v.scale_by_real(d.data(), y2.data(), n);
    CHECK(max_diff(y1, y2) == 0.0);

    const double t1 = s.norm_sq(x.data(), o1.data(), n), t2 = v.norm_sq(x.data(), o2.data(), n);
    CHECK(std::fabs(t1 - t2) <= 1e-13 * std::max(1.0, t1));
    for (std::size_t i = 0; i < n; ++i) CHECK(std::fabs(o1[i] - o2[i]) <= 1e-15 * std::max(1.0, o1[i]));
    CHECK(std::fabs(s.total_norm_sq(x.data(), n) - v.total_norm_sq(x.data(), n)) <= 1e-13 * std::max(1.0, t1));
    CHECK(std::abs(s.sum(x.data(), n) - v.sum(x.data(), n)) < 1e-12);

    y1 = x, y2 = x;
    s.reflect(a, y1.data(), n);
    v.reflect(a, y2.data(), n);
    CHECK(max_diff(y1, y2) == 0.0);
    y1 = x, y2 = x;
    s.negate_masked(mask.data(), y1.data(), n);
    v.negate_masked(mask.data(), y2.data(), n);
    CHECK(max_diff(y1, y2) == 0.0);
    y1 = x, y2 = x;
    s.scale(0.7, y1.data(), n);
    v.scale(0.7, y2.data(), n);
    CHECK(max_diff(y1, y2) == 0.0);
  }
}

TEST_CASE("backend selection") {
  BackendGuard guard;
  simd::set_backend(simd::Backend::kScalar);
  CHECK(simd::active_backend() == simd::Backend::kScalar);
  CHECK(simd::backend_name(simd::Backend::kScalar) == "scalar");
  if (avx2_available()) {
    simd::set_backend(simd::Backend::kAvx2);
    CHECK(simd::active_backend() == simd::Backend::kAvx2);
  } else {
    CHECK_THROWS_AS(simd::set_backend(simd::Backend::kAvx2), DomainError);
  }
}

TEST_CASE("walks and whole runs agree across backends") {
  if (!avx2_available()) {
    MESSAGE("AVX2 unavailable; skipping");
    return;
  }
  BackendGuard guard;
  optimizer::RunConfig c;
  c.seed = 2718;
  const auto p = optimizer::prepare(c);
  auto run_all = [&](simd::Backend b) {
    simd::set_backend(b);
    const auto walk = probabilities(ctqw::apply_walk_normalized(*p.walk_operator, init_basis(p.domain, 200)));
    std::ostringstream csv;
    for (const auto& t : experiments::run_many(optimizer::Algorithm::kBbwQw, p, c, 20, 1))
      experiments::write_trace_csv(csv, t);
    return std::make_pair(walk, csv.str());
  };
  const auto scalar = run_all(simd::Backend::kScalar);
  const auto vector = run_all(simd::Backend::kAvx2);
  for (std::size_t j = 0; j < scalar.first.size(); ++j) CHECK(std::fabs(scalar.first[j] - vector.first[j]) < 1e-13);
  CHECK(scalar.second == vector.second);
}
