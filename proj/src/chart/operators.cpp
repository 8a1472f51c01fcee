#include "gbcurv/chart/operators.hpp"

#include <cmath>
#include <string>

#include "gbcurv/common.hpp"
#include "gbcurv/curvinv/invariants.hpp"

namespace gbcurv::chart {

using dfalg::DoubleForm;

namespace {

std::string point_string(std::span<const double> x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i)
    s += (i ? ", " : "") + std::to_string(x[i]);
  return s + ")";
}

double quad(const DoubleForm& bilinear, std::span<const double> u) {
  double s = 0.0;
  for (int i = 0; i < bilinear.n(); ++i) {
    double row = 0.0;
    for (int j = 0; j < bilinear.n(); ++j) row += bilinear.at(i, j) * u[static_cast<std::size_t>(j)];
    s += u[static_cast<std::size_t>(i)] * row;
  }
  return s;
}

double norm2(std::span<const double> u) {
  double s = 0.0;
  for (double x : u) s += x * x;
  return s;
}

}  // namespace

PointContext::PointContext(const ChartMetric& metric, std::span<const double> x)
    : metric_(&metric),
      x_(x.begin(), x.end()),
      frame_(curvature_at(metric, x)),
      ctx_(frame_.curvature, 1e-7),
      t2_(metric.dim(), 1, 1) {}

DoubleForm PointContext::hessian(const ScalarField& f) const {
  return covariant_hessian(*metric_, f, x_, &frame_);
}

std::vector<double> PointContext::gradient(const ScalarField& f) const {
  return frame_gradient(*metric_, f, x_, &frame_);
}

double PointContext::laplacian(const ScalarField& f) const {
  return -dfalg::contract(hessian(f), 1).scalar_value();
}

double PointContext::h2() const { return curvinv::gauss_bonnet(ctx_, 1); }

double PointContext::h4() const { return curvinv::gauss_bonnet(ctx_, 2); }

const DoubleForm& PointContext::einstein_tensor() const {
  if (!have_t2_) {
    t2_ = curvinv::lovelock(ctx_, 1);
    have_t2_ = true;
  }
  return t2_;
}

double ell_2k(const ChartMetric& m, const ScalarField& f, std::span<const double> x, int k) {
  if (k < 0 || 2 * k >= m.dim()) throw DegreeError("ell_2k: need 0 <= 2k < n");
  const PointContext pc(m, x);
  return -dfalg::inner_product(curvinv::lovelock(pc.ctx(), k), pc.hessian(f));
}

double hessian_sigma_k(const ChartMetric& m, const ScalarField& f, std::span<const double> x, int k) {
  const PointContext pc(m, x);
  return curvinv::sigma_k(pc.hessian(f), k);
}

double scr_l_operator(const PointContext& pc, const ScalarField& f) {
  const int n = pc.metric().dim();
  if (n < 4) throw DimensionError("scr_L needs n >= 4");
  const DoubleForm hess = pc.hessian(f);
  const std::vector<double> grad = pc.gradient(f);
  const double df2 = norm2(grad);
  const double lap = -dfalg::contract(hess, 1).scalar_value();
  const double s2 = curvinv::sigma_k(hess, 2);
  const DoubleForm& t2 = pc.einstein_tensor();
  const double ell2 = -dfalg::inner_product(t2, hess);
  const double c2 = n - 2.0, c3 = n - 3.0;
  return 2.0 * c2 * c3 * s2 + 2.0 * c3 * ell2 - c2 * c3 * c3 * lap * df2 +
         2.0 * c2 * c3 * quad(hess, grad) + 2.0 * c3 * quad(t2, grad) - c2 * c3 * pc.h2() * df2 +
         (n - 1.0) * c2 * c3 * (n - 4.0) / 4.0 * df2 * df2;
}

double scr_l_operator(const ChartMetric& m, const ScalarField& f, std::span<const double> x) {
  return scr_l_operator(PointContext(m, x), f);
}

ConformalH4Result conformal_h4_check(const ChartMetric& m, const ScalarField& f,
                                     std::span<const double> x) {
  const int n = m.dim();
  if (n < 4) throw DimensionError("conformal h4 law needs n >= 4");
  const PointContext base(m, x);
  const ChartMetric bar = m.conformally_scaled(sf_exp2(f));
  const PointContext conf(bar, x);
  const double fx = f(x);

  ConformalH4Result out{};
  out.lhs = std::exp(4.0 * fx) * conf.h4();
  out.rhs = base.h4() + scr_l_operator(base, f);
  out.residual = rel_residual(out.lhs, out.rhs);

  out.volume_residual =
      rel_residual(conf.frame().sqrt_det, std::exp(n * fx) * base.frame().sqrt_det);

  // Frame forms of e^{2f}g pick up e^{-2f} relative to the base frame forms.
  const double down = std::exp(-2.0 * fx);
  out.weyl_residual = dfalg::rel_residual(conf.ctx().weyl(), base.ctx().weyl() * down);

  const DoubleForm hess = base.hessian(f);
  const std::vector<double> grad = base.gradient(f);
  DoubleForm dfdf(n, 1, 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      dfdf.at(i, j) = grad[static_cast<std::size_t>(i)] * grad[static_cast<std::size_t>(j)];
  const DoubleForm g = DoubleForm::metric_power(n, 1);
  const DoubleForm h = hess - dfdf + g * (0.5 * norm2(grad));
  const DoubleForm expected =
      (base.ctx().riemann() - dfalg::exterior_product(g, h)) * down;
  out.riemann_residual = dfalg::rel_residual(conf.ctx().riemann(), expected);
  return out;
}

double cocycle_residual(const ChartMetric& m, const ScalarField& f, const ScalarField& phi,
                        std::span<const double> x) {
  const PointContext base(m, x);
  const double lhs = scr_l_operator(base, sf_add(f, phi)) - scr_l_operator(base, f);
  const ChartMetric bar = m.conformally_scaled(sf_exp2(f));
  const double rhs = std::exp(4.0 * f(x)) * scr_l_operator(bar, phi, x);
  return rel_residual(lhs, rhs);
}

double l_operator(const PointContext& pc, const ScalarField& v) {
  const int n = pc.metric().dim();
  if (n <= 4) throw DimensionError("L_g needs n > 4");
  const double vx = v(pc.point());
  if (!(vx > 0.0))
    throw ChartError("conformal factor v is nonpositive at " + point_string(pc.point()));
  const DoubleForm hess = pc.hessian(v);
  const std::vector<double> grad = pc.gradient(v);
  const double dv2 = norm2(grad);
  const DoubleForm& t2 = pc.einstein_tensor();
  const double tr_h = dfalg::contract(hess, 1).scalar_value();          // c Hess v, plus sign
  const double c2h2 = dfalg::contract(dfalg::power(hess, 2), 2).scalar_value();  // c^2 Hess^2 v
  const double nm2 = n - 2.0, nm4 = n - 4.0;
  return -dfalg::inner_product(t2, hess) + n / (nm4 * vx) * quad(t2, grad) -
         2.0 * nm2 * dv2 / (nm4 * vx) * pc.h2() + nm2 / (nm4 * vx) * c2h2 +
         4.0 * nm2 * nm2 * dv2 / (nm4 * nm4 * vx * vx) * tr_h +
         4.0 * n * nm2 / (nm4 * nm4 * vx * vx) * quad(hess, grad);
}

double k_operator(const PointContext& pc, const ScalarField& v) {
  const int n = pc.metric().dim();
  return l_operator(pc, v) + (n - 4.0) / (8.0 * (n - 3.0)) * pc.h4() * v(pc.point());
}

ConformalPowerResult conformal_power_ops(const ChartMetric& m, const ScalarField& v,
                                         std::span<const double> x) {
  const int n = m.dim();
  if (n <= 4) throw DimensionError("the power-law conformal operators need n > 4");
  const PointContext base(m, x);
  const double vx = v(x);
  if (!(vx > 0.0))
    throw ChartError("conformal factor v is nonpositive at " + point_string(x));

  ConformalPowerResult out{};
  out.l_value = l_operator(base, v);
  out.k_value = out.l_value + (n - 4.0) / (8.0 * (n - 3.0)) * base.h4() * vx;

  const ChartMetric bar = m.conformally_scaled(sf_pow(v, 8.0 / (n - 4.0)));
  const PointContext conf(bar, x);
  const double lhs = std::pow(vx, (n + 12.0) / (n - 4.0)) * conf.h4();
  const double rhs = base.h4() * vx + 8.0 * (n - 3.0) / (n - 4.0) * out.l_value;
  out.residual = rel_residual(lhs, rhs);
  return out;
}

double bidegree_covariance_residual(const ChartMetric& m, const ScalarField& a,
                                    const ScalarField& phi, std::span<const double> x) {
  const int n = m.dim();
  if (n <= 4) throw DimensionError("bi-degree covariance needs n > 4");
  const ChartMetric scaled = m.conformally_scaled(sf_mul(a, a));
  const double lhs = k_operator(PointContext(scaled, x), phi);
  const ScalarField psi = sf_mul(sf_pow(a, (n - 4.0) / 4.0), phi);
  const double rhs = std::pow(a(x), -(n + 12.0) / 4.0) * k_operator(PointContext(m, x), psi);
  return rel_residual(lhs, rhs);
}

}  // namespace gbcurv::chart
