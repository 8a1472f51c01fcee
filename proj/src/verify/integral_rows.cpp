#include "gbcurv/verify/integral_rows.hpp"

#include <cmath>

#include "gbcurv/chart/operators.hpp"
#include "gbcurv/chart/quadrature.hpp"
#include "gbcurv/common.hpp"
#include "gbcurv/curvinv/invariants.hpp"

namespace gbcurv::verify {

using chart::ChartMetric;
using chart::PointContext;
using chart::ScalarField;
using dfalg::DoubleForm;

namespace {

double norm2(std::span<const double> u) {
  double s = 0.0;
  for (double x : u) s += x * x;
  return s;
}

linalg::Mat ricci_in_coords(const PointContext& pc) {
  const linalg::Mat m = dfalg::to_matrix(pc.ctx().ricci());
  return linalg::matmul(pc.frame().chol, linalg::matmul(m, linalg::transpose(pc.frame().chol)));
}

std::vector<double> coordinate_gradient(const PointContext& pc, const ScalarField& f) {
  const int n = pc.metric().dim();
  std::vector<double> df(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a)
    df[static_cast<std::size_t>(a)] =
        chart::fd_partial(f, pc.point(), a, pc.metric().step(a), pc.metric().fd().order);
  std::vector<double> grad(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j) acc += pc.frame().g_inv(i, j) * df[static_cast<std::size_t>(j)];
    grad[static_cast<std::size_t>(i)] = acc;
  }
  return grad;
}

}  // namespace

std::vector<double> integral_default_steps(const chart::Domain& domain) {
  std::vector<double> steps(static_cast<std::size_t>(domain.dim()));
  for (int a = 0; a < domain.dim(); ++a)
    steps[static_cast<std::size_t>(a)] = 4.101305500959875e-4 * domain.size(a);
  return steps;
}

std::vector<Row> dim4_integral_rows(const ChartMetric& m, const ScalarField& f,
                                    std::span<const int> res, double tol, int jobs,
                                    nlohmann::json params) {
  if (m.dim() != 4) throw ConfigError("dimension-4 integral rows need a 4-dimensional chart");
  std::vector<Row> rows;

  const double lhs_bochner = chart::integrate(
      m,
      [&](std::span<const double> x) {
        const PointContext pc(m, x);
        return 2.0 * curvinv::sigma_k(pc.hessian(f), 2);
      },
      res, jobs);
  const double rhs_bochner = chart::integrate(
      m,
      [&](std::span<const double> x) {
        const PointContext pc(m, x);
        const auto grad = pc.gradient(f);
        return linalg::quad_form(dfalg::to_matrix(pc.ctx().ricci()), grad, grad);
      },
      res, jobs);
  rows.push_back(make_row("int.bochner", params, lhs_bochner, rhs_bochner,
                          rel_residual(lhs_bochner, rhs_bochner), tol));

  const double lhs_hess = chart::integrate(
      m,
      [&](std::span<const double> x) {
        const PointContext pc(m, x);
        const auto grad = pc.gradient(f);
        return 2.0 * linalg::quad_form(dfalg::to_matrix(pc.hessian(f)), grad, grad);
      },
      res, jobs);
  const double rhs_hess = chart::integrate(
      m,
      [&](std::span<const double> x) {
        const PointContext pc(m, x);
        return norm2(pc.gradient(f)) * pc.laplacian(f);
      },
      res, jobs);
  rows.push_back(
      make_row("int.hess", params, lhs_hess, rhs_hess, rel_residual(lhs_hess, rhs_hess), tol));

  const double int_lap = chart::integrate(
      m, [&](std::span<const double> x) { return PointContext(m, x).laplacian(f); }, res, jobs);
  rows.push_back(make_row("int.laplacian", params, int_lap, 0.0, std::abs(int_lap), tol));

  const double int_ell = chart::integrate(
      m,
      [&](std::span<const double> x) {
        const PointContext pc(m, x);
        return -dfalg::inner_product(pc.einstein_tensor(), pc.hessian(f));
      },
      res, jobs);
  rows.push_back(make_row("int.ell2", params, int_ell, 0.0, std::abs(int_ell), tol));

  const double int_scrl = chart::integrate(
      m, [&](std::span<const double> x) { return chart::scr_l_operator(m, f, x); }, res, jobs);
  rows.push_back(make_row("int.dim4_scrl", params, int_scrl, 0.0, std::abs(int_scrl), tol));

  const ChartMetric bar = m.conformally_scaled(chart::sf_exp2(f));
  const double int_h4bar = chart::integrate(
      bar, [&](std::span<const double> x) { return PointContext(bar, x).h4(); }, res, jobs);
  const double int_h4 = chart::integrate(
      m, [&](std::span<const double> x) { return PointContext(m, x).h4(); }, res, jobs);
  rows.push_back(
      make_row("int.dim4_h4", params, int_h4bar, int_h4, rel_residual(int_h4bar, int_h4), tol));
  return rows;
}

std::vector<Row> dim5_integral_rows(const ChartMetric& m, const ScalarField& v,
                                    std::span<const int> res, double tol, int jobs,
                                    nlohmann::json params) {
  const int n = m.dim();
  if (n <= 4) throw ConfigError("the power-law integral rows need dimension > 4");
  const double nm4 = n - 4.0;
  std::vector<Row> rows;

  const ChartMetric bar = m.conformally_scaled(chart::sf_pow(v, 8.0 / nm4));
  const double int_h4bar = chart::integrate(
      bar, [&](std::span<const double> x) { return PointContext(bar, x).h4(); }, res, jobs);

  const double int_v4h4 = chart::integrate(
      m,
      [&](std::span<const double> x) {
        const double vx = v(x);
        return vx * vx * vx * vx * PointContext(m, x).h4();
      },
      res, jobs);
  const double int_t2 = chart::integrate(
      m,
      [&](std::span<const double> x) {
        const PointContext pc(m, x);
        const auto grad = pc.gradient(v);
        const double vx = v(x);
        return vx * vx * linalg::quad_form(dfalg::to_matrix(pc.einstein_tensor()), grad, grad);
      },
      res, jobs);
  const ScalarField v2 = chart::sf_mul(v, v);
  const double a_of_v = chart::integrate(
      m,
      [&](std::span<const double> x) {
        const PointContext pc(m, x);
        const double dv2 = norm2(pc.gradient(v));
        return nm4 * dv2 * pc.laplacian(v2) - 4.0 * dv2 * dv2;
      },
      res, jobs);
  const double rhs_total =
      int_v4h4 + 16.0 * (n - 3.0) / nm4 * int_t2 + 16.0 * (n - 2.0) * (n - 3.0) / (nm4 * nm4 * nm4) * a_of_v;
  rows.push_back(
      make_row("int.h4bar", params, int_h4bar, rhs_total, rel_residual(int_h4bar, rhs_total), tol));

  const double lhs_ricci =
      nm4 * chart::integrate(
                m,
                [&](std::span<const double> x) {
                  const PointContext pc(m, x);
                  const PointContext pb(bar, x);
                  const linalg::Mat diff = ricci_in_coords(pb) - ricci_in_coords(pc);
                  const auto grad = coordinate_gradient(pc, v);
                  const double vx = v(x);
                  return vx * vx * linalg::quad_form(diff, grad, grad);
                },
                res, jobs);
  const double int_dv4 = chart::integrate(
      m,
      [&](std::span<const double> x) {
        const double dv2 = norm2(PointContext(m, x).gradient(v));
        return dv2 * dv2;
      },
      res, jobs);
  const double rhs_ricci = -a_of_v + 4.0 * (n - 1.0) * int_dv4;
  rows.push_back(make_row("int.ricci_change", params, lhs_ricci, rhs_ricci,
                          rel_residual(lhs_ricci, rhs_ricci), tol));

  // Reference-only: the printed variant with the v-weighted functional and
  // coefficient -2 is inconsistent with the display verified above, so its
  // residual is reported without being asserted.
  const double a_printed = chart::integrate(
      m,
      [&](std::span<const double> x) {
        const PointContext pc(m, x);
        const double dv2 = norm2(pc.gradient(v));
        return nm4 * v(x) * dv2 * pc.laplacian(v2) - 4.0 * dv2 * dv2;
      },
      res, jobs);
  const double rhs_printed = -2.0 * a_printed + 4.0 * (n - 1.0) * int_dv4;
  rows.push_back(not_applicable_row("int.ricci_change_printed", params, lhs_ricci, rhs_printed,
                                    rel_residual(lhs_ricci, rhs_printed)));
  return rows;
}

}  // namespace gbcurv::verify
