// Acceptance suite: one numbered criterion per block, each printing a
// PASS/FAIL line with its measured worst residual. Exits nonzero if any
// criterion fails. Criteria with stated runtime budgets are timed.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "gbcurv/chart/operators.hpp"
#include "gbcurv/chart/quadrature.hpp"
#include "gbcurv/common.hpp"
#include "gbcurv/curvinv/invariants.hpp"
#include "gbcurv/linalg.hpp"
#include "gbcurv/models/models.hpp"
#include "gbcurv/parallel.hpp"
#include "gbcurv/rng.hpp"
#include "gbcurv/verify/integral_rows.hpp"
#include "gbcurv/verify/suites.hpp"

using namespace gbcurv;
using curvinv::CurvatureContext;
using dfalg::DoubleForm;

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

int g_failures = 0;

class Criterion {
 public:
  Criterion(int number, std::string label)
      : number_(number), label_(std::move(label)), start_(std::chrono::steady_clock::now()) {}

  void note(double residual) { worst_ = std::max(worst_, residual); }
  void require(bool ok, const char* what) {
    if (!ok) {
      failed_ = true;
      detail_ += std::string(detail_.empty() ? "" : "; ") + what;
    }
  }
  void bound(double residual, double tol) {
    note(residual);
    if (!(residual < tol)) {
      failed_ = true;
      char buf[96];
      std::snprintf(buf, sizeof buf, "residual %.3e >= %.1e", residual, tol);
      detail_ += std::string(detail_.empty() ? "" : "; ") + buf;
    }
  }
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

  ~Criterion() {
    const double secs = seconds();
    if (failed_) ++g_failures;
    std::printf("[%s] criterion %2d: %-58s worst=%.3e (%.1fs)%s%s\n", failed_ ? "FAIL" : " ok ",
                number_, label_.c_str(), worst_, secs, detail_.empty() ? "" : " -- ",
                detail_.c_str());
    std::fflush(stdout);
  }

 private:
  int number_;
  std::string label_;
  std::chrono::steady_clock::time_point start_;
  double worst_ = 0.0;
  bool failed_ = false;
  std::string detail_;
};

int jobs() { return default_jobs(); }

void criterion_1() {
  Criterion c(1, "h_2k two-expression agreement, n=4..8, 100 contexts");
  for (int n = 4; n <= 8; ++n) {
    std::vector<double> worst(100, 0.0);
    parallel_for(100, jobs(), [&](std::size_t t) {
      const CurvatureContext ctx = curvinv::random_curvature(n, 3 + static_cast<int>(t % 3),
                                                             1000 + 17 * t + static_cast<std::size_t>(n));
      for (int k = 0; 2 * k <= n; ++k)
        worst[t] = std::max(worst[t], curvinv::h2k_cross_residual(ctx, k));
    });
    for (double w : worst) c.bound(w, 1e-9);
  }
  c.require(c.seconds() < 30.0, "runtime over 30 s");
}

void criterion_2() {
  Criterion c(2, "T_n == 0 entrywise, n=4 and n=6, 100 contexts each");
  for (int n : {4, 6}) {
    const double tol = n == 4 ? 1e-9 : 1e-8;
    std::vector<double> worst(100, 0.0);
    parallel_for(100, jobs(), [&](std::size_t t) {
      const CurvatureContext ctx =
          curvinv::random_curvature(n, 3 + static_cast<int>(t % 4), 2000 + 31 * t + static_cast<std::size_t>(n));
      worst[t] = dfalg::max_abs(curvinv::lovelock(ctx, n / 2));
    });
    for (double w : worst) c.bound(w, tol);
  }
}

void criterion_3() {
  Criterion c(3, "explicit N_k vs star definition, w = R and w = h");
  for (int n = 4; n <= 8; ++n) {
    std::vector<double> worst(20, 0.0);
    parallel_for(20, jobs(), [&](std::size_t t) {
      Rng rng(3000 + t + static_cast<std::size_t>(n) * 101);
      const CurvatureContext ctx = curvinv::random_curvature(n, 3, 3100 + t * 7 + static_cast<std::size_t>(n));
      for (int k = 1; k <= 3 && 2 * k <= n - 2; ++k)
        worst[t] = std::max(worst[t], curvinv::newton_explicit_residual(ctx, k));
      linalg::Mat hm(n);
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) hm(i, j) = hm(j, i) = rng.gaussian();
      const DoubleForm h = DoubleForm::from_matrix(hm);
      for (int k = 1; k <= n - 1; ++k)
        worst[t] = std::max(worst[t], curvinv::newton_explicit_residual(h, k));
    });
    for (double w : worst) c.bound(w, 1e-9);
  }
}

void criterion_4() {
  Criterion c(4, "Newton formula and h_(2k+2) = <N_k(R), R>");
  for (int n = 4; n <= 8; ++n) {
    std::vector<double> worst(20, 0.0);
    parallel_for(20, jobs(), [&](std::size_t t) {
      Rng rng(4000 + t + static_cast<std::size_t>(n) * 103);
      const CurvatureContext ctx = curvinv::random_curvature(n, 3, 4100 + t * 13 + static_cast<std::size_t>(n));
      for (int k = 0; k <= 3 && 2 * (k + 1) <= n; ++k) {
        worst[t] = std::max(worst[t], curvinv::newton_formula_residual(ctx, k));
        worst[t] = std::max(worst[t], curvinv::newton_gb_residual(ctx, k));
      }
      linalg::Mat hm(n);
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) hm(i, j) = hm(j, i) = rng.gaussian();
      const DoubleForm h = DoubleForm::from_matrix(hm);
      for (int k = 0; k + 1 <= n - 1; ++k)
        worst[t] = std::max(worst[t], curvinv::newton_formula_residual(h, k));
    });
    for (double w : worst) c.bound(w, 1e-9);
  }
}

void criterion_5() {
  Criterion c(5, "Avez-type formulas and h_4(S^n(1)) = n!/(4(n-4)!)");
  for (int n : {6, 8}) {
    std::vector<double> worst(20, 0.0);
    parallel_for(20, jobs(), [&](std::size_t t) {
      const CurvatureContext ctx = curvinv::random_curvature(n, 4, 5100 + t * 11 + static_cast<std::size_t>(n));
      for (int k : {1, 2}) worst[t] = std::max(worst[t], curvinv::avez_type_residual(ctx, k));
    });
    for (double w : worst) c.bound(w, 1e-9);
  }
  // Classical Avez on n = 4 contexts.
  for (std::size_t t = 0; t < 20; ++t) {
    const CurvatureContext ctx = curvinv::random_curvature(4, 4, 5500 + t);
    c.bound(curvinv::avez_type_residual(ctx, 1), 1e-9);
  }
  const double expect[] = {6.0, 30.0, 90.0};
  for (int n : {4, 5, 6}) {
    const CurvatureContext sf = curvinv::space_form_context(n, 1.0);
    c.bound(rel_residual(curvinv::gauss_bonnet(sf, 2), expect[n - 4]), 1e-12);
  }
}

void criterion_6() {
  Criterion c(6, "Weyl split of h_2k; exact clause on conformally flat input");
  for (int n = 4; n <= 8; ++n) {
    std::vector<double> worst(20, 0.0);
    parallel_for(20, jobs(), [&](std::size_t t) {
      const CurvatureContext ctx = curvinv::random_curvature(n, 4, 6100 + t * 19 + static_cast<std::size_t>(n));
      for (int k = 0; k <= 3 && 2 * k <= n; ++k)
        worst[t] = std::max(worst[t], curvinv::sigma_weyl_split_residual(ctx, k));
    });
    for (double w : worst) c.bound(w, 1e-8);
    // R = gA with random symmetric A: W = 0 and the split collapses.
    Rng rng(6200 + static_cast<std::uint64_t>(n));
    linalg::Mat am(n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) am(i, j) = am(j, i) = rng.gaussian();
    const CurvatureContext cf(
        dfalg::exterior_product(DoubleForm::metric_power(n, 1), DoubleForm::from_matrix(am)));
    for (int k = 0; 2 * k <= n; ++k) {
      const double coef = static_cast<double>(factorial(n - k)) * factorial(k) / factorial(n - 2 * k);
      c.bound(rel_residual(curvinv::gauss_bonnet(cf, k), coef * curvinv::sigma_k(cf.schouten(), k)),
              1e-10);
    }
  }
}

void criterion_7() {
  Criterion c(7, "h_4 = |W|^2 + 2(n-2)(n-3)sigma_2; Einstein sigma_2 clause");
  for (int n = 4; n <= 8; ++n)
    for (std::size_t t = 0; t < 20; ++t) {
      const CurvatureContext ctx = curvinv::random_curvature(n, 4, 7100 + t * 23 + static_cast<std::size_t>(n));
      const auto q = curvinv::quadratic_invariants(ctx);
      c.bound(rel_residual(q.h4, q.weyl_norm2 + 2.0 * (n - 2) * (n - 3) * q.sigma2), 1e-9);
      c.bound(rel_residual(q.sigma2, curvinv::sigma_k(ctx.schouten(), 2)), 1e-9);
    }
  for (int n = 4; n <= 8; ++n) {
    const CurvatureContext sf = curvinv::space_form_context(n, 1.0 + 0.25 * n);
    const auto q = curvinv::quadratic_invariants(sf);
    const double scal = sf.scalar_curvature();
    c.bound(rel_residual(q.sigma2, scal * scal / (8.0 * n * (n - 1))), 1e-10);
  }
}

void criterion_8() {
  Criterion c(8, "trace relations cN_k(R) and c^2 N_k(R), n <= 8");
  for (int n = 4; n <= 8; ++n) {
    std::vector<double> worst(20, 0.0);
    parallel_for(20, jobs(), [&](std::size_t t) {
      const CurvatureContext ctx = curvinv::random_curvature(n, 3, 8100 + t * 29 + static_cast<std::size_t>(n));
      for (int k = 0; 2 * k <= n - 2; ++k) {
        const auto [first, full] = curvinv::trace_relations_residual(ctx, k);
        worst[t] = std::max({worst[t], first, full});
      }
    });
    for (double w : worst) c.bound(w, 1e-9);
  }
}

void criterion_9() {
  Criterion c(9, "sigma_k eigenvalue oracle, 1000 random symmetric forms");
  std::vector<double> worst(1000, 0.0);
  parallel_for(1000, jobs(), [&](std::size_t t) {
    Rng rng(9000 + t);
    const int n = 3 + static_cast<int>(t % 6);  // 3..8
    linalg::Mat hm(n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) hm(i, j) = hm(j, i) = rng.gaussian();
    const DoubleForm h = DoubleForm::from_matrix(hm);
    const auto elem = linalg::elementary_symmetric(linalg::jacobi_eigenvalues(hm));
    for (int k = 0; k <= n; ++k)
      worst[t] = std::max(worst[t],
                          std::abs(curvinv::sigma_k(h, k) - elem[static_cast<std::size_t>(k)]));
  });
  for (double w : worst) c.bound(w, 1e-9);
}

void criterion_10() {
  Criterion c(10, "product law h_4(S^2 x S^2) = 2; S^3(0.1) x S^2 sign pattern");
  const CurvatureContext s2s2 = curvinv::product_curvature(curvinv::space_form_context(2, 1.0),
                                                           curvinv::space_form_context(2, 1.0));
  c.bound(std::abs(curvinv::gauss_bonnet(s2s2, 2) - 2.0), 1e-10);
  const auto rep = curvinv::s3r_times_sp_signs(0.1, 2);
  c.require(rep.min_sectional >= -1e-12, "sectional curvature dips below -1e-12");
  c.require(rep.min_ricci_eig > 0.0, "Ricci not positive");
  c.require(rep.min_einstein_eig > 0.0, "Einstein tensor not positive");
  c.require(rep.h4 > 0.0, "h_4 not positive");
  c.require(rep.sigma2 < 0.0, "sigma_2 not negative");
}

void criterion_11() {
  Criterion c(11, "chart convergence on S^4(1): error < 1e-6, ratio in [12,20]");
  const auto sphere = models::space_form(4, 1.0);
  const DoubleForm expect = DoubleForm::metric_power(4, 2) * 0.5;
  {
    const chart::ChartMetric m = sphere.make_chart({});
    for (const auto& x : sphere.sample_points)
      c.bound(dfalg::max_abs_diff(chart::curvature_at(m, x).curvature, expect), 1e-6);
  }
  auto err_at = [&](double step) {
    chart::FdConfig fd;
    fd.step.assign(4, step);
    const chart::ChartMetric m = sphere.make_chart(fd);
    double worst = 0.0;
    for (const auto& x : sphere.sample_points)
      worst = std::max(worst, dfalg::max_abs_diff(chart::curvature_at(m, x).curvature, expect));
    return worst;
  };
  const double ratio = err_at(0.08) / err_at(0.04);
  c.note(ratio);
  c.require(ratio >= 12.0 && ratio <= 20.0, "step-halving ratio outside [12, 20]");
}

void criterion_12() {
  Criterion c(12, "conformal laws at 20 points: T^4 with f, S^5 with v");
  {
    const chart::ChartMetric m = models::flat_torus(4, kTwoPi).make_chart({});
    const chart::ScalarField f = chart::ScalarField::from_expression("0.1*sin(x1)*cos(x2)");
    Rng rng(12001);
    std::vector<std::vector<double>> pts;
    for (int s = 0; s < 20; ++s) {
      std::vector<double> x(4);
      for (double& v : x) v = rng.uniform(0.0, kTwoPi);
      pts.push_back(std::move(x));
    }
    std::vector<double> res(pts.size(), 0.0);
    parallel_for(pts.size(), jobs(), [&](std::size_t i) {
      res[i] = chart::conformal_h4_check(m, f, pts[i]).residual;
    });
    for (double r : res) c.bound(r, 1e-4);
  }
  {
    const auto s5 = models::space_form(5, 1.0);
    const chart::ChartMetric m = s5.make_chart({});
    const chart::ScalarField v = chart::ScalarField::from_expression("1 + 0.1*x1 + 0.05*x2^2");
    Rng rng(12002);
    std::vector<std::vector<double>> pts;
    for (int s = 0; s < 20; ++s) {
      std::vector<double> x(5);
      for (double& c2 : x) c2 = rng.uniform(-0.25, 0.25);
      pts.push_back(std::move(x));
    }
    std::vector<double> res(pts.size(), 0.0);
    parallel_for(pts.size(), jobs(), [&](std::size_t i) {
      res[i] = chart::conformal_power_ops(m, v, pts[i]).residual;
    });
    for (double r : res) c.bound(r, 1e-4);
  }
  c.require(c.seconds() < 60.0, "runtime over 60 s");
}

void criterion_13() {
  Criterion c(13, "cocycle and bi-degree covariance; exact trivial clauses");
  const chart::ChartMetric t4 = models::flat_torus(4, kTwoPi).make_chart({});
  const chart::ScalarField f = chart::ScalarField::from_expression("0.1*sin(x1)*cos(x2)");
  const chart::ScalarField phi = chart::ScalarField::from_expression("0.08*cos(x1)*sin(x2)");
  const chart::ScalarField zero = chart::ScalarField::constant(0.0);
  Rng rng(13001);
  for (int s = 0; s < 6; ++s) {
    std::vector<double> x(4);
    for (double& v : x) v = rng.uniform(0.0, kTwoPi);
    c.require(chart::cocycle_residual(t4, f, zero, x) == 0.0, "phi = 0 clause not exact");
    c.bound(chart::cocycle_residual(t4, f, phi, x), 1e-3);
  }
  const chart::ChartMetric t5 = models::flat_torus(5, kTwoPi).make_chart({});
  const chart::ScalarField a = chart::ScalarField::from_expression("1 + 0.05*sin(x1)*cos(x2)");
  const chart::ScalarField psi = chart::ScalarField::from_expression("1.1 + 0.1*cos(x1)");
  for (int s = 0; s < 6; ++s) {
    std::vector<double> x(5);
    for (double& v : x) v = rng.uniform(0.0, kTwoPi);
    c.require(chart::bidegree_covariance_residual(t5, chart::ScalarField::constant(1.0), psi, x) <
                  1e-15,
              "a = 1 clause not exact");
    c.bound(chart::bidegree_covariance_residual(t5, a, psi, x), 1e-3);
  }
}

void criterion_14() {
  Criterion c(14, "integral identities on T^4 and T^5");
  chart::FdConfig fd;
  {
    chart::Domain box;
    box.lo.assign(1, 0.0);
    box.hi.assign(1, kTwoPi);
    box.periodic.assign(1, 1);
    fd.step = verify::integral_default_steps(box);
  }
  {
    const chart::ChartMetric m = models::flat_torus(4, kTwoPi).make_chart(fd);
    const chart::ScalarField f = chart::ScalarField::from_expression("sin(x1)*sin(x2)");
    const std::vector<int> res{16, 16, 2, 2};
    const auto rows = verify::dim4_integral_rows(m, f, res, 1e-6, jobs(), {});
    for (const auto& row : rows) c.bound(row.residual, 1e-6);
  }
  {
    const chart::ChartMetric m = models::flat_torus(5, kTwoPi).make_chart(fd);
    const chart::ScalarField v = chart::ScalarField::from_expression("1.5 + 0.3*cos(x1)");
    const std::vector<int> res{24, 2, 2, 2, 2};
    const auto rows = verify::dim5_integral_rows(m, v, res, 1e-5, jobs(), {});
    for (const auto& row : rows)
      if (row.status != verify::Status::NotApplicable) c.bound(row.residual, 1e-5);
  }
  c.require(c.seconds() < 120.0, "runtime over 120 s");
}

void criterion_15() {
  Criterion c(15, "negative control fails; reports byte-identical across jobs");
  verify::Options opt;
  opt.n_lo = 3;
  opt.n_hi = 4;
  opt.trials = 4;
  opt.seed = 15001;
  // Corrupted star must produce failing rows.
  verify::Options bad = opt;
  bad.corrupt_star = true;
  c.require(verify::count_failures(verify::algebra_suite(bad)) > 0,
            "corrupted star produced no failures");
  c.require(verify::count_failures(verify::algebra_suite(opt)) == 0, "clean run has failures");
  // Determinism: same rows for 1 worker and 4 workers, twice.
  auto render = [](const verify::Options& o) {
    verify::Options run = o;
    std::vector<verify::Row> rows = verify::run_suite("all", run);
    return verify::make_report({{"probe", true}}, rows).dump();
  };
  verify::Options serial = opt;
  serial.jobs = 1;
  verify::Options wide = opt;
  wide.jobs = 4;
  const std::string a = render(serial);
  const std::string b = render(wide);
  const std::string a2 = render(serial);
  c.require(a == b, "reports differ across worker counts");
  c.require(a == a2, "reports differ across repeated runs");
}

}  // namespace

int main() {
  std::printf("acceptance suite (%d workers)\n", jobs());
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  criterion_12();
  criterion_13();
  criterion_14();
  criterion_15();
  if (g_failures > 0) {
    std::printf("%d criterion(s) FAILED\n", g_failures);
    return 1;
  }
  std::printf("all 15 criteria passed\n");
  return 0;
}
