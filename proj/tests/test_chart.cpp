#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gbcurv/chart/operators.hpp"
#include "gbcurv/chart/quadrature.hpp"
#include "gbcurv/common.hpp"
#include "gbcurv/curvinv/invariants.hpp"
#include "gbcurv/models/models.hpp"
#include "gbcurv/rng.hpp"
#include "gbcurv/verify/integral_rows.hpp"

using namespace gbcurv;
using chart::ChartMetric;
using chart::ScalarField;
using dfalg::DoubleForm;

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

ChartMetric flat_chart(int n) { return models::flat_torus(n, kTwoPi).make_chart({}); }

}  // namespace

TEST_CASE("flat chart has zero curvature") {
  const ChartMetric m = flat_chart(4);
  const std::vector<double> x{1.0, 2.5, 4.0, 0.5};
  const chart::PointFrame pf = chart::curvature_at(m, x);
  CHECK(dfalg::max_abs(pf.curvature) < 1e-12);
  CHECK(pf.bianchi_residual < 1e-12);
  CHECK(pf.sqrt_det == doctest::Approx(1.0));
}

TEST_CASE("sphere chart reproduces the space form tensor") {
  const auto sphere = models::space_form(4, 1.0);
  const ChartMetric m = sphere.make_chart({});
  const DoubleForm expect = DoubleForm::metric_power(4, 2) * 0.5;
  // At the chart center and at generic points.
  const std::vector<double> origin{0.0, 0.0, 0.0, 0.0};
  CHECK(dfalg::max_abs_diff(chart::curvature_at(m, origin).curvature, expect) < 1e-8);
  for (const auto& x : sphere.sample_points) {
    const chart::PointFrame pf = chart::curvature_at(m, x);
    CHECK(dfalg::max_abs_diff(pf.curvature, expect) < 1e-6);
    const linalg::Mat gram =
        linalg::matmul(linalg::transpose(pf.frame), linalg::matmul(pf.g, pf.frame));
    CHECK(linalg::max_abs(gram - linalg::Mat::identity(4)) < 1e-10);
  }
}

TEST_CASE("product chart sectional pattern") {
  const auto prod = models::product(models::space_form(2, 1.0), models::space_form(2, 1.0));
  const ChartMetric m = prod.make_chart({});
  const std::vector<double> x{0.1, -0.05, 0.08, 0.12};
  const chart::PointFrame pf = chart::curvature_at(m, x);
  auto sec = [&](int i, int j) {
    std::vector<double> u(4, 0.0), v(4, 0.0);
    u[static_cast<std::size_t>(i)] = 1.0;
    v[static_cast<std::size_t>(j)] = 1.0;
    return curvinv::sectional_curvature(pf.curvature, u, v);
  };
  CHECK(sec(0, 1) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(sec(2, 3) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(std::abs(sec(0, 2)) < 1e-7);
  CHECK(std::abs(sec(1, 3)) < 1e-7);
}

TEST_CASE("variable Gaussian curvature in two dimensions") {
  // g = (1 + x1^2) delta on a plane patch: for e^{2u} delta the Gaussian
  // curvature is -e^{-2u} (u_11 + u_22); here u = log(1+x1^2)/2 gives
  // K = -(1 - x1^2)/(1 + x1^2)^3, an off-origin closed form with
  // nonvanishing Christoffel terms.
  chart::Domain dom;
  dom.lo = {-2.0, -2.0};
  dom.hi = {2.0, 2.0};
  dom.periodic = {0, 0};
  std::vector<ScalarField> entries(4);
  auto conf = [](std::span<const double> x) { return 1.0 + x[0] * x[0]; };
  entries[0] = ScalarField::from_function(conf);
  entries[3] = ScalarField::from_function(conf);
  entries[1] = entries[2] = ScalarField::constant(0.0);
  const ChartMetric m(dom, entries, {});
  for (double x1 : {-0.8, 0.3, 1.1}) {
    const std::vector<double> x{x1, 0.4};
    const chart::PointFrame pf = chart::curvature_at(m, x);
    const double got = pf.curvature.at(0, 0);  // K = R(e1,e2;e1,e2)
    const double expect = -(1.0 - x1 * x1) / std::pow(1.0 + x1 * x1, 3);
    CHECK(got == doctest::Approx(expect).epsilon(1e-8));
  }
}

TEST_CASE("fd convergence rates") {
  const auto sphere = models::space_form(4, 1.0);
  const DoubleForm expect = DoubleForm::metric_power(4, 2) * 0.5;
  auto err_at = [&](int order, double step) {
    chart::FdConfig fd;
    fd.order = order;
    fd.step.assign(4, step);
    const ChartMetric m = sphere.make_chart(fd);
    double worst = 0.0;
    for (const auto& x : sphere.sample_points)
      worst = std::max(worst, dfalg::max_abs_diff(chart::curvature_at(m, x).curvature, expect));
    return worst;
  };
  const double r2 = err_at(2, 0.08) / err_at(2, 0.04);
  CHECK(r2 >= 3.0);
  CHECK(r2 <= 5.0);
  const double r4 = err_at(4, 0.08) / err_at(4, 0.04);
  CHECK(r4 >= 12.0);
  CHECK(r4 <= 20.0);
}

TEST_CASE("covariant hessian") {
  const ChartMetric m = flat_chart(3);
  const ScalarField quad = ScalarField::from_function([](std::span<const double> x) {
    return 0.5 * (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
  });
  const std::vector<double> x{1.0, 2.0, 3.0};
  const DoubleForm hess = chart::covariant_hessian(m, quad, x);
  CHECK(dfalg::rel_residual(hess, DoubleForm::metric_power(3, 1)) < 1e-9);
  const ScalarField lin = ScalarField::from_expression("2*x1 - 0.5*x2 + x3");
  CHECK(dfalg::max_abs(chart::covariant_hessian(m, lin, x)) < 1e-10);

  // Restriction of an ambient coordinate to the sphere: Hess u = -u g.
  const auto sphere = models::space_form(3, 1.0);
  const ChartMetric sm = sphere.make_chart({});
  const ScalarField u = ScalarField::from_function([](std::span<const double> x) {
    double r2 = 0.0;
    for (double c : x) r2 += c * c;
    return 2.0 * x[0] / (1.0 + r2);
  });
  const std::vector<double> p{0.1, -0.15, 0.2};
  const DoubleForm hu = chart::covariant_hessian(sm, u, p);
  CHECK(dfalg::rel_residual(hu, DoubleForm::metric_power(3, 1) * (-u(p))) < 1e-7);
}

TEST_CASE("ell_2k and hessian sigma_k") {
  const ChartMetric m = flat_chart(4);
  const ScalarField quad = ScalarField::from_function([](std::span<const double> x) {
    double r2 = 0.0;
    for (double c : x) r2 += c * c;
    return 0.5 * r2;
  });
  const std::vector<double> x{1.0, 2.0, 3.0, 4.0};
  // Geometers' sign: Delta f = -trace Hess f, so Delta(|x|^2/2) = -n.
  CHECK(chart::ell_2k(m, quad, x, 0) == doctest::Approx(-4.0).epsilon(1e-9));
  for (int k = 0; k <= 4; ++k)
    CHECK(chart::hessian_sigma_k(m, quad, x, k) == doctest::Approx(binomial(4, k)).epsilon(1e-8));

  const ScalarField f = ScalarField::from_expression("sin(x1)*cos(x2) + 0.3*x3*x4");
  const chart::PointContext pc(m, x);
  CHECK(chart::ell_2k(m, f, x, 0) ==
        doctest::Approx(-dfalg::contract(pc.hessian(f), 1).scalar_value()).epsilon(1e-12));
  CHECK(chart::hessian_sigma_k(m, f, x, 1) == doctest::Approx(-pc.laplacian(f)).epsilon(1e-12));

  // Space form: ell_2 = -<T_2, Hess f> with T_2 = (n-1)(n-2)kappa/2 g.
  const auto sphere = models::space_form(4, 1.0);
  const ChartMetric sm = sphere.make_chart({});
  const std::vector<double> p{0.05, 0.1, -0.08, 0.02};
  const double t2coef = 3.0 * 2.0 / 2.0;
  const chart::PointContext spc(sm, p);
  const double expect = t2coef * (-dfalg::contract(spc.hessian(f), 1).scalar_value());
  CHECK(chart::ell_2k(sm, f, p, 1) == doctest::Approx(expect).epsilon(1e-6));
}

TEST_CASE("conformal h4 law") {
  const ChartMetric m = flat_chart(4);
  const ScalarField f = ScalarField::from_expression("0.1*sin(x1)*cos(x2)");
  const std::vector<double> x{1.2, 2.3, 3.4, 4.5};
  const auto r = chart::conformal_h4_check(m, f, x);
  CHECK(r.residual < 1e-6);
  CHECK(r.volume_residual < 1e-12);
  CHECK(r.weyl_residual < 1e-7);
  CHECK(r.riemann_residual < 1e-7);
  // Constant factor: scr_L vanishes and h4 scales exactly.
  const auto rc = chart::conformal_h4_check(m, ScalarField::constant(0.25), x);
  CHECK(rc.residual < 1e-14);
  CHECK(std::abs(chart::scr_l_operator(m, ScalarField::constant(0.25), x)) < 1e-14);
}

TEST_CASE("conformal residual shrinks under step refinement") {
  const auto torus = models::flat_torus(4, kTwoPi);
  const ScalarField f = ScalarField::from_expression("0.2*sin(x1)*cos(x2)");
  const std::vector<double> x{1.3, 2.1, 3.7, 0.9};
  double prev = 0.0;
  bool first = true;
  for (double step : {0.12, 0.06, 0.03}) {
    chart::FdConfig fd;
    fd.step.assign(4, step);
    const ChartMetric m = torus.make_chart(fd);
    const double res = chart::conformal_h4_check(m, f, x).residual;
    if (!first) CHECK(res < prev);
    prev = res;
    first = false;
  }
}

TEST_CASE("fd step underflow is rejected") {
  chart::FdConfig fd;
  fd.step.assign(4, 0.0);
  CHECK_THROWS_AS(models::flat_torus(4, kTwoPi).make_chart(fd), ChartError);
}

TEST_CASE("conformal square expansion") {
  // Squaring the curvature transformation law:
  // R_bar^2 = e^{4f}(R^2 - 2 g R H + g^2 H^2), compared in frames where the
  // conformal side picks up e^{-4f}.
  const auto torus = models::flat_torus(4, kTwoPi);
  const ChartMetric m = torus.make_chart({});
  const ScalarField f = ScalarField::from_expression("0.15*sin(x1)*cos(x2)");
  const std::vector<double> x{2.2, 0.7, 4.1, 3.3};
  const chart::PointContext base(m, x);
  const ChartMetric bar = m.conformally_scaled(chart::sf_exp2(f));
  const chart::PointContext conf(bar, x);

  const DoubleForm hess = base.hessian(f);
  const auto grad = base.gradient(f);
  double df2 = 0.0;
  for (double gcomp : grad) df2 += gcomp * gcomp;
  DoubleForm dfdf(4, 1, 1);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      dfdf.at(i, j) = grad[static_cast<std::size_t>(i)] * grad[static_cast<std::size_t>(j)];
  const DoubleForm g = DoubleForm::metric_power(4, 1);
  const DoubleForm h = hess - dfdf + g * (0.5 * df2);

  const DoubleForm& r = base.ctx().riemann();
  const DoubleForm expansion =
      dfalg::power(r, 2) -
      dfalg::exterior_product(g, dfalg::exterior_product(r, h)) * 2.0 +
      dfalg::exterior_product(DoubleForm::metric_power(4, 2), dfalg::power(h, 2));
  const double down = std::exp(-4.0 * f(x));
  CHECK(dfalg::rel_residual(dfalg::power(conf.ctx().riemann(), 2), expansion * down) < 1e-7);
}

TEST_CASE("cocycle rule") {
  const ChartMetric m = flat_chart(4);
  const ScalarField f = ScalarField::from_expression("0.1*sin(x1)*cos(x2)");
  const ScalarField phi = ScalarField::from_expression("0.07*cos(x1)*sin(x2)");
  const ScalarField zero = ScalarField::constant(0.0);
  const std::vector<double> x{0.4, 1.9, 2.7, 5.1};
  CHECK(chart::cocycle_residual(m, f, zero, x) == 0.0);
  CHECK(chart::cocycle_residual(m, zero, phi, x) < 1e-12);
  CHECK(chart::cocycle_residual(m, f, phi, x) < 1e-4);
}

TEST_CASE("power-law conformal operators") {
  const ChartMetric m = flat_chart(5);
  const std::vector<double> x{1.0, 2.0, 3.0, 4.0, 5.0};
  // v = 1: L vanishes and h4_bar = h4.
  const auto r1 = chart::conformal_power_ops(m, ScalarField::constant(1.0), x);
  CHECK(std::abs(r1.l_value) < 1e-14);
  CHECK(r1.residual < 1e-12);
  const ScalarField v = ScalarField::from_expression("1 + 0.1*sin(x1)");
  CHECK(chart::conformal_power_ops(m, v, x).residual < 1e-6);
  // Sphere chart with a positive polynomial factor.
  const auto sphere = models::space_form(5, 1.0);
  const ChartMetric sm = sphere.make_chart({});
  const ScalarField vp = ScalarField::from_expression("1 + 0.1*x1 + 0.05*x2^2");
  const std::vector<double> p{0.1, -0.12, 0.05, 0.2, -0.07};
  CHECK(chart::conformal_power_ops(sm, vp, p).residual < 1e-4);
  CHECK_THROWS_AS(chart::conformal_power_ops(sm, ScalarField::constant(-1.0), p), ChartError);
}

TEST_CASE("bi-degree covariance") {
  const ChartMetric m = flat_chart(5);
  const ScalarField phi = ScalarField::from_expression("1.1 + 0.1*cos(x1)");
  const std::vector<double> x{0.3, 1.1, 2.9, 4.3, 5.7};
  CHECK(chart::bidegree_covariance_residual(m, ScalarField::constant(1.0), phi, x) == 0.0);
  CHECK(chart::bidegree_covariance_residual(m, ScalarField::constant(2.0), phi, x) < 1e-10);
  const ScalarField a = ScalarField::from_expression("1 + 0.05*sin(x1)*cos(x2)");
  CHECK(chart::bidegree_covariance_residual(m, a, phi, x) < 1e-3);
}

TEST_CASE("quadrature") {
  const ChartMetric m = flat_chart(4);
  const std::vector<int> res{8, 8, 2, 2};
  CHECK(chart::integrate(m, [](std::span<const double>) { return 1.0; }, res) ==
        doctest::Approx(std::pow(kTwoPi, 4)).epsilon(1e-13));
  const ChartMetric line = flat_chart(1);
  const std::vector<int> res1{16};
  CHECK(chart::integrate(line, [](std::span<const double> x) { return std::sin(x[0]) * std::sin(x[0]); },
                         res1) == doctest::Approx(3.141592653589793).epsilon(1e-13));
  // Spectral exactness once the resolution clears the bandwidth.
  const std::vector<int> res2{5};
  CHECK(chart::integrate(line, [](std::span<const double> x) { return std::cos(2.0 * x[0]); }, res2) ==
        doctest::Approx(0.0).epsilon(1e-12).scale(1.0));
  // Divergence: integral of Delta f vanishes on the torus.
  const ScalarField f = ScalarField::from_expression("sin(x1)*sin(x2)");
  const double idf = chart::integrate(
      m, [&](std::span<const double> x) { return chart::PointContext(m, x).laplacian(f); },
      std::vector<int>{8, 8, 1, 1});
  CHECK(std::abs(idf) < 1e-9);
  // Non-periodic charts are rejected.
  const auto sphere = models::space_form(3, 1.0);
  const ChartMetric sm = sphere.make_chart({});
  CHECK_THROWS_AS(chart::integrate(sm, [](std::span<const double>) { return 1.0; },
                                   std::vector<int>{4, 4, 4}),
                  ChartError);
}

TEST_CASE("integral rows vanish for a constant conformal factor") {
  // Hess f = 0 pointwise, so every dimension-4 integrand is identically
  // zero and the conformal-invariance row compares h4 with itself. A dyadic
  // constant keeps the stencil cancellations exact.
  const ChartMetric m = flat_chart(4);
  const ScalarField c = ScalarField::constant(0.25);
  const std::vector<int> res{2, 2, 2, 2};
  const auto rows = gbcurv::verify::dim4_integral_rows(m, c, res, 1e-15, 1, {});
  REQUIRE(!rows.empty());
  for (const auto& row : rows) CHECK(row.residual < 1e-15);
}

TEST_CASE("metric validation") {
  chart::Domain dom;
  dom.lo = {0.0, 0.0};
  dom.hi = {kTwoPi, kTwoPi};
  dom.periodic = {1, 1};
  // Non-periodic entry on a periodic axis is rejected.
  std::vector<ScalarField> bad(4);
  bad[0] = ScalarField::from_expression("1 + 0.1*x1");
  bad[1] = ScalarField::constant(0.0);
  bad[2] = ScalarField::constant(0.0);
  bad[3] = ScalarField::constant(1.0);
  CHECK_THROWS_AS(ChartMetric(dom, bad, {}), ChartError);
  // Non-SPD metric surfaces as a ChartError at evaluation.
  chart::Domain dom2;
  dom2.lo = {-1.0, -1.0};
  dom2.hi = {1.0, 1.0};
  dom2.periodic = {0, 0};
  std::vector<ScalarField> indef(4);
  indef[0] = ScalarField::constant(1.0);
  indef[1] = ScalarField::constant(2.0);
  indef[2] = ScalarField::constant(2.0);
  indef[3] = ScalarField::constant(1.0);
  const ChartMetric mm(dom2, indef, {});
  const std::vector<double> origin{0.0, 0.0};
  CHECK_THROWS_AS(chart::curvature_at(mm, origin), ChartError);
  // Stencils may not leave a non-periodic domain.
  std::vector<ScalarField> id(4);
  id[0] = id[3] = ScalarField::constant(1.0);
  id[1] = id[2] = ScalarField::constant(0.0);
  const ChartMetric edge(dom2, id, {});
  const std::vector<double> corner{0.9999, 0.0};
  CHECK_THROWS_AS(chart::curvature_at(edge, corner), ChartError);
}
