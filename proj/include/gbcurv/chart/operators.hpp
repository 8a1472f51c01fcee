#pragma once

#include <functional>

#include "gbcurv/chart/chart_metric.hpp"
#include "gbcurv/curvinv/curvature_context.hpp"

namespace gbcurv::chart {

// Bundled per-point geometry: frame data plus the algebraic curvature
// context, built once and shared by the pointwise operators.
class PointContext {
 public:
  PointContext(const ChartMetric& metric, std::span<const double> x);

  const ChartMetric& metric() const { return *metric_; }
  std::span<const double> point() const { return x_; }
  const PointFrame& frame() const { return frame_; }
  const curvinv::CurvatureContext& ctx() const { return ctx_; }

  dfalg::DoubleForm hessian(const ScalarField& f) const;
  std::vector<double> gradient(const ScalarField& f) const;
  // The geometers' Laplacian: minus the trace of the covariant Hessian.
  double laplacian(const ScalarField& f) const;

  double h2() const;
  double h4() const;
  const dfalg::DoubleForm& einstein_tensor() const;  // T_2

 private:
  const ChartMetric* metric_;
  std::vector<double> x_;
  PointFrame frame_;
  curvinv::CurvatureContext ctx_;
  mutable bool have_t2_ = false;
  mutable dfalg::DoubleForm t2_;
};

// ell_2k(f) = -<T_2k, Hess f>; k = 0 gives the Laplacian above.
double ell_2k(const ChartMetric& m, const ScalarField& f, std::span<const double> x, int k);

// sigma_k of the frame Hessian (the k-th Hessian operator).
double hessian_sigma_k(const ChartMetric& m, const ScalarField& f, std::span<const double> x, int k);

// The fully nonlinear operator tying h_4 of e^{2f}g to h_4 of g:
//   scr_L_g(f) = 2(n-2)(n-3) sigma_2(Hess f) + 2(n-3) ell_2(f)
//              - (n-2)(n-3)^2 (Delta f)|df|^2 + 2(n-2)(n-3) Hess f(grad f, grad f)
//              + 2(n-3) T_2(grad f, grad f) - (n-2)(n-3) h_2 |df|^2
//              + (n-1)(n-2)(n-3)(n-4)/4 |df|^4.
double scr_l_operator(const PointContext& pc, const ScalarField& f);
double scr_l_operator(const ChartMetric& m, const ScalarField& f, std::span<const double> x);

struct ConformalH4Result {
  double lhs;  // e^{4f} h_4(e^{2f} g)
  double rhs;  // h_4(g) + scr_L_g(f)
  double residual;
  double volume_residual;   // mu_bar = e^{nf} mu
  double weyl_residual;     // frame Weyl of e^{2f}g vs e^{-2f} frame Weyl of g
  double riemann_residual;  // frame curvature vs e^{-2f}(R - gH)
};

// Both sides computed independently: the left by running the curvature
// pipeline on a fresh conformal chart metric.
ConformalH4Result conformal_h4_check(const ChartMetric& m, const ScalarField& f,
                                     std::span<const double> x);

// |scr_L_g(f+phi) - scr_L_g(f) - e^{4f} scr_L_{e^{2f}g}(phi)| (scale-normalized).
double cocycle_residual(const ChartMetric& m, const ScalarField& f, const ScalarField& phi,
                        std::span<const double> x);

struct ConformalPowerResult {
  double l_value;  // L_g(v)
  double k_value;  // K_g(v) = L_g(v) + (n-4)/(8(n-3)) h_4 v
  double residual; // v^((n+12)/(n-4)) h4_bar vs h_4 v + 8(n-3)/(n-4) L_g(v)
};

// Dimension > 4 conformal operators for g_bar = v^(8/(n-4)) g. Traces written
// as plain c-contractions carry the plus sign; only Delta is sign-flipped.
ConformalPowerResult conformal_power_ops(const ChartMetric& m, const ScalarField& v,
                                         std::span<const double> x);

double l_operator(const PointContext& pc, const ScalarField& v);
double k_operator(const PointContext& pc, const ScalarField& v);

// |K_{a^2 g}(phi) - a^{-(n+12)/4} K_g(a^{(n-4)/4} phi)| (scale-normalized).
double bidegree_covariance_residual(const ChartMetric& m, const ScalarField& a,
                                    const ScalarField& phi, std::span<const double> x);

}  // namespace gbcurv::chart
