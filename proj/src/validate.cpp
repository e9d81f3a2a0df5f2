#include "qwgo/validate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qwgo/ctqw.hpp"
#include "qwgo/error.hpp"
#include "qwgo/grover.hpp"
#include "qwgo/objectives.hpp"
#include "qwgo/simd.hpp"
#include "qwgo/specfun.hpp"

namespace qwgo::validate {
namespace {

using Checks = std::vector<CheckResult>;

void add(Checks& out, const std::string& family, const std::string& name, double measured, double tol,
         bool passed, std::string detail = {}) {
  out.push_back({family, name, passed, measured, tol, std::move(detail)});
}

void add_le(Checks& out, const std::string& family, const std::string& name, double measured, double tol) {
  add(out, family, name, measured, tol, measured <= tol);
}

void bessel_checks(Checks& out) {
  double reflection = 0.0;
  for (double z : {0.1, 1.0, 10.0, 100.0}) {
    const auto row = specfun::bessel_j_row(-64, 64, z);
    for (int n = 0; n <= 64; ++n) {
      const double sign = (n % 2 == 0) ? 1.0 : -1.0;
      reflection = std::max(reflection, std::abs(row[-n] - sign * row[n]));
    }
  }
  add_le(out, "bessel", "reflection", reflection, 1e-14);

  double norm_err = 0.0;
  for (double z : {1.0, 10.0, 100.0, 500.0}) {
    const int m = static_cast<int>(std::ceil(z)) + 40;
    const auto row = specfun::bessel_j_row(-m, m, z);
    double s = 0.0;
    for (double v : row.values) s += v * v;
    norm_err = std::max(norm_err, std::abs(s - 1.0));
  }
  add_le(out, "bessel", "sum-of-squares", norm_err, 1e-10);

  double recurrence = 0.0;
  for (double z : {0.5, 1.0, 10.0, 100.0, 500.0}) {
    const int top = static_cast<int>(z) + 21;
    const auto row = specfun::bessel_j_row(-top, top, z);
    for (int n = -top + 1; n <= top - 1; ++n) {
      const double r = std::abs(row[n - 1] + row[n + 1] - (2.0 * n / z) * row[n]);
      recurrence = std::max(recurrence, r / std::max(1.0, std::abs(row[n])));
    }
  }
  add_le(out, "bessel", "recurrence-residual", recurrence, 1e-9);

  double deriv = 0.0;
  const double h = 1e-6;
  for (int n : {0, 1, 2, 4, 7, 20}) {
    for (double z : {0.5, 3.0, 10.0, 40.0}) {
      const double fd = (specfun::bessel_j(n, z + h) - specfun::bessel_j(n, z - h)) / (2.0 * h);
      deriv = std::max(deriv, std::abs(fd - specfun::bessel_j_deriv(n, z)));
    }
  }
  add_le(out, "bessel", "derivative-vs-finite-difference", deriv, 1e-6);
}

void grover_checks(Checks& out) {
  const GridDomain domain(0.0, 1.0, 9);
  const std::size_t n = domain.size();
  std::vector<double> values(n);
  for (std::size_t j = 0; j < n; ++j) values[j] = static_cast<double>(j);

  double law = 0.0, spread = 0.0;
  for (std::size_t m : {std::size_t{1}, std::size_t{2}, n / 8, n / 4, n / 2}) {
    const grover::ThresholdOracle oracle(values, static_cast<double>(m));
    for (int r = 0; r <= 25; ++r) {
      QuantumState s = init_uniform(domain);
      grover::grover_rotations(s, oracle, r);
      const auto p = probabilities(s);
      double marked = 0.0;
      double lo = 1.0, hi = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        marked += p[j];
        lo = std::min(lo, p[j]);
        hi = std::max(hi, p[j]);
      }
      law = std::max(law, std::abs(marked - grover::theoretical_success(m, n, r)));
      spread = std::max(spread, hi - lo);
    }
  }
  add_le(out, "grover-law", "marked-probability-vs-closed-form", law, 1e-9);
  add_le(out, "grover-law", "uniform-within-marked-set", spread, 1e-12);

  const grover::ThresholdOracle quarter(values, static_cast<double>(n / 4));
  QuantumState s = init_uniform(domain);
  grover::grover_rotations(s, quarter, 1);
  add_le(out, "grover-law", "quarter-marked-one-rotation", std::abs(grover::marked_probability(s, quarter) - 1.0),
         1e-12);
}

void expm_checks(Checks& out, const Options& o) {
  std::ostringstream detail;
  detail << "N=" << o.expm_size << " z=" << o.expm_spread;
  const double dev = expm_interior_deviation(o.expm_size, o.expm_spread);
  add(out, "expm", "interior-deviation", dev, 1e-6, dev <= 1e-6, detail.str());
}

void closed_form_checks(Checks& out) {
  for (const std::string& name : objectives::builtin_names()) {
    const auto& spec = objectives::by_name(name);
    const GridDomain domain(spec.x_lo, spec.x_hi, 9);
    const auto values = objectives::grid_values(spec, domain);
    const auto params = ctqw::WalkParams::from_spread(ctqw::default_spread(domain.size()), ctqw::kDefaultTau,
                                                      domain.delta());
    const ctqw::WalkOperator op(domain, params, values);
    const std::size_t k = domain.size() / 2;
    const auto walked = probabilities(ctqw::apply_walk_normalized(op, init_basis(domain, k)));
    const auto closed = ctqw::walk_probability_closed_form(domain, params, values, k);
    double err = 0.0;
    for (std::size_t j = 0; j < walked.size(); ++j) err = std::max(err, std::abs(walked[j] - closed[j]));
    add_le(out, "closed-form", name, err, 1e-9);
  }
}

void lemma_checks(Checks& out) {
  for (const std::string& name : objectives::builtin_names()) {
    const auto& spec = objectives::by_name(name);
    const GridDomain domain(spec.x_lo, spec.x_hi, 9);
    const auto values = objectives::grid_values(spec, domain);
    const auto params = ctqw::WalkParams::from_spread(ctqw::default_spread(domain.size()), ctqw::kDefaultTau,
                                                      domain.delta());
    const auto walk = ctqw::walk_probability_closed_form(domain, params, values, domain.size() / 2);
    const std::vector<double> uniform(domain.size(), 1.0 / static_cast<double>(domain.size()));
    const ctqw::Moments w = ctqw::moments(walk, values);
    const ctqw::Moments u = ctqw::moments(uniform, values);
    // Reported as (walk - uniform); must be strictly negative.
    add(out, "lemmas", name + "-mean", w.mean - u.mean, 0.0, w.mean < u.mean);
    add(out, "lemmas", name + "-variance", w.variance - u.variance, 0.0, w.variance < u.variance);
  }
}

void efficiency_checks(Checks& out) {
  const auto params = ctqw::WalkParams::from_spread(1.0, 0.1, 1.0);
  const bool small_m = ctqw::qw_efficiency_bound(4, 512, 0.0, 0, params, 0.5);
  add(out, "efficiency-bound", "m=4,N=512,r=0,J_L=0.5 holds", small_m ? 1 : 0, 1, small_m);
  const bool quarter = ctqw::qw_efficiency_bound(128, 512, 0.0, 1, params, 1.0 / std::sqrt(128.0));
  add(out, "efficiency-bound", "m=N/4,r=1 fails", quarter ? 1 : 0, 0, !quarter);
}

void fixedpoint_checks(Checks& out) {
  int mismatches = 0;
  for (int k = 0; k < 8; ++k) {
    const auto f = objectives::fixedpoint_eval_exp((k >> 2) & 1, (k >> 1) & 1, k & 1);
    if (((f[0] << 2) | (f[1] << 1) | f[2]) != fixedpoint_reference(k)) ++mismatches;
  }
  add(out, "fixedpoint", "truth-table", mismatches, 0, mismatches == 0);
}

void simd_checks(Checks& out) {
  if (!simd::cpu_has_avx2() || simd::avx2::table() == nullptr) {
    add(out, "simd", "avx2-vs-scalar", 0.0, 0.0, true, "avx2 unavailable; scalar only");
    return;
  }
  const auto& s = simd::scalar::table();
  const auto& v = *simd::avx2::table();
  const std::size_t n = 517;
  std::vector<cplx> x(n), y1(n), y2(n);
  std::vector<double> d(n), p1(n), p2(n);
  std::vector<std::uint8_t> mask(n);
  for (std::size_t j = 0; j < n; ++j) {
    x[j] = {std::sin(0.37 * j), std::cos(1.3 * j)};
    y1[j] = y2[j] = {std::cos(0.11 * j), std::sin(0.7 * j + 1.0)};
    d[j] = 1.0 + 0.5 * std::sin(0.05 * j);
    mask[j] = static_cast<std::uint8_t>((j * 7) % 3 == 0);
  }
  double err = 0.0;
  auto cmp = [&](const std::vector<cplx>& a, const std::vector<cplx>& b) {
    for (std::size_t j = 0; j < n; ++j) err = std::max(err, std::abs(a[j] - b[j]));
  };
  s.caxpy({0.3, -1.1}, x.data(), y1.data(), n);
  v.caxpy({0.3, -1.1}, x.data(), y2.data(), n);
  cmp(y1, y2);
  s.scale_by_real(d.data(), y1.data(), n);
  v.scale_by_real(d.data(), y2.data(), n);
  cmp(y1, y2);
  s.negate_masked(mask.data(), y1.data(), n);
  v.negate_masked(mask.data(), y2.data(), n);
  cmp(y1, y2);
  s.reflect({0.25, 0.5}, y1.data(), n);
  v.reflect({0.25, 0.5}, y2.data(), n);
  cmp(y1, y2);
  err = std::max(err, std::abs(s.norm_sq(y1.data(), p1.data(), n) - v.norm_sq(y1.data(), p2.data(), n)) / n);
  for (std::size_t j = 0; j < n; ++j) err = std::max(err, std::abs(p1[j] - p2[j]));
  err = std::max(err, std::abs(s.sum(y1.data(), n) - v.sum(y1.data(), n)) / n);
  add_le(out, "simd", "avx2-vs-scalar", err, 1e-13);
}

}  // namespace

std::vector<std::string> families() {
  return {"bessel", "grover-law", "expm", "closed-form", "lemmas", "efficiency-bound", "fixedpoint", "simd"};
}

Eigen::MatrixXcd free_walk_expm(std::size_t n, double z) {
  // H tau = z * (I - (S + S^T) / 2) with unit spacing and tau.
  const auto dim = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    h(k, k) = z;
    if (k + 1 < dim) h(k, k + 1) = h(k + 1, k) = -0.5 * z;
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h);
  const Eigen::MatrixXcd q = eig.eigenvectors().cast<cplx>();
  Eigen::VectorXcd phase(dim);
  for (Eigen::Index k = 0; k < dim; ++k) phase(k) = std::polar(1.0, -eig.eigenvalues()(k));
  return q * phase.asDiagonal() * q.transpose();
}

double expm_interior_deviation(std::size_t n, double z) {
  if (n < 4) throw UsageError("expm check needs N >= 4");
  int q = 0;
  while ((std::size_t{1} << q) < n) ++q;
  if ((std::size_t{1} << q) != n) throw UsageError("expm check needs N to be a power of two");
  // Unit spacing; with tau = 1 the diffusion coefficient equals z.
  const GridDomain grid(0.0, static_cast<double>(n), q);
  const auto params = ctqw::WalkParams::from_spread(z, 1.0, grid.delta());
  const ctqw::WalkOperator op(grid, params, std::vector<double>(n, 0.0));
  const Eigen::MatrixXcd ref = free_walk_expm(n, z);
  double dev = 0.0;
  for (std::size_t j = n / 4; j <= 3 * n / 4; ++j)
    for (std::size_t k = n / 4; k <= 3 * n / 4; ++k)
      dev = std::max(dev, std::abs(op.entry(j, k) - ref(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k))));
  return dev;
}

int fixedpoint_reference(int k) {
  const double y = std::exp(-k / 8.0) * 8.0;
  const double fl = std::floor(y);
  // Nearest integer, ties toward the lower value.
  int level = (y - fl > 0.5) ? static_cast<int>(fl) + 1 : static_cast<int>(fl);
  return std::clamp(level, 0, 7);
}

std::vector<CheckResult> run_checks(const Options& options) {
  const auto all = families();
  if (options.family && std::find(all.begin(), all.end(), *options.family) == all.end())
    throw UsageError("unknown check family '" + *options.family + "'");
  auto wanted = [&](const char* f) { return !options.family || *options.family == f; };

  Checks out;
  if (wanted("bessel")) bessel_checks(out);
  if (wanted("grover-law")) grover_checks(out);
  if (wanted("expm")) expm_checks(out, options);
  if (wanted("closed-form")) closed_form_checks(out);
  if (wanted("lemmas")) lemma_checks(out);
  if (wanted("efficiency-bound")) efficiency_checks(out);
  if (wanted("fixedpoint")) fixedpoint_checks(out);
  if (wanted("simd")) simd_checks(out);
  return out;
}

}  // namespace qwgo::validate
