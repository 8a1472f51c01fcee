#pragma once

#include <optional>
#include <utility>

#include "gbcurv/curvinv/curvature_context.hpp"

namespace gbcurv::curvinv {

// 2k-th Gauss-Bonnet curvature h_2k = *(g^(n-2k) R^k)/(n-2k)! = c^2k R^k/(2k)!.
// Both expressions are evaluated and must agree to 1e-9 relative; the
// contraction-form value is returned. h_0 = 1.
double gauss_bonnet(const CurvatureContext& ctx, int k);

// 2k-th Einstein-Lovelock tensor
// T_2k = h_2k g - c^(2k-1) R^k/(2k-1)! = *(g^(n-2k-1) R^k)/(n-2k-1)!,
// both routes checked where defined (the star route needs 2k < n). T_0 = g.
dfalg::DoubleForm lovelock(const CurvatureContext& ctx, int k);

// k-th elementary symmetric function of the eigenvalues of a symmetric
// (1,1)-form: sigma_k = c^k h^k/(k!)^2 = *(g^(n-k) h^k)/((n-k)! k!).
double sigma_k(const dfalg::DoubleForm& h, int k);

// Classical Newton transformation
// t_k(h) = *(g^(n-k-1) h^k)/((n-k-1)! k!) = sigma_k g - c^(k-1) h^k/((k-1)! k!).
dfalg::DoubleForm classic_newton(const dfalg::DoubleForm& h, int k);

// Generalized Newton transformation of a (p,p)-form:
// N_k(w) = *(g^(n-pk-p) w^k)/(n-pk-p)!. For symmetric first-Bianchi input and
// k >= 1, the alternating expansion
//   N_k(w) = sum_{r=pk-p}^{pk} (-1)^(r+pk) g^(p-pk+r) c^r w^k /((p-pk+r)! r!)
// is evaluated as well and must agree. At p = 1 this equals k! t_k(h).
dfalg::DoubleForm newton_transform(const dfalg::DoubleForm& w, int k);
dfalg::DoubleForm newton_transform(const CurvatureContext& ctx, int k);

// Residual of <N_k(w), w> = c^(pk+p) w^(k+1)/(pk+p)!.
double newton_formula_residual(const dfalg::DoubleForm& w, int k);
double newton_formula_residual(const CurvatureContext& ctx, int k);
// Residual of h_(2k+2) = <N_k(R), R>.
double newton_gb_residual(const CurvatureContext& ctx, int k);

// Per-identity residuals for verification rows; the operations above assert
// the same equalities internally, these report the measured values.
double h2k_cross_residual(const CurvatureContext& ctx, int k);
double lovelock_cross_residual(const CurvatureContext& ctx, int k);  // needs 2k < n
double sigma_cross_residual(const dfalg::DoubleForm& h, int k);
double newton_explicit_residual(const dfalg::DoubleForm& w, int k);
double newton_explicit_residual(const CurvatureContext& ctx, int k);
// max of the recursion residual t_k = sigma_k g - h t_(k-1) (endomorphism
// composition) and the trace identity tr t_k = (n-k) sigma_k.
double classic_newton_recursion_residual(const dfalg::DoubleForm& h, int k);

// Residual of
// h_(2k+2) = <c^(2k-2)R^k/(2k-2)!, R> - <c^(2k-1)R^k/(2k-1)!, cR> + h_2k h_2.
// k = 1 is the Avez formula h_4 = |R|^2 - |cR|^2 + |c^2R|^2/4.
double avez_type_residual(const CurvatureContext& ctx, int k);

// For metrics with c^(2k-2)R^k proportional to g^2:
// h_(2k+2) = {2k(2k-1)/(n(n-1)) + (n-4k)/n} h_2k h_2.
// Returns nullopt when the proportionality precondition fails.
std::optional<double> pq_einstein_h_residual(const CurvatureContext& ctx, int k);

// Residuals of cN_k(R) = (n-2k-1) T_2k (entrywise) and
// c^2 N_k(R) = (n-2k)(n-2k-1) h_2k.
std::pair<double, double> trace_relations_residual(const CurvatureContext& ctx, int k);

// Residual of c^(p+k)(w h^k)/(p+k)! = <*(g^(n-p-k) w)/(n-p-k)!, h^k>.
double gnf_residual(const dfalg::DoubleForm& w, const dfalg::DoubleForm& h, int k);

// Residual of the Weyl/Schouten split of h_2k:
// h_2k = (n-k)! k!/(n-2k)! sigma_k(A)
//        + sum_{i<k} k!/(i!(k-i)!(n-2k)!) <*(g^(n-2k+i) A^i), W^(k-i)>.
double sigma_weyl_split_residual(const CurvatureContext& ctx, int k);

struct QuadraticInvariants {
  double einstein_def;   // |Ric|^2 - Scal^2/n, zero iff Einstein
  double confflat_def;   // |R|^2 - |Ric|^2/(n-2) + Scal^2/(2(n-1)(n-2)) = |W|^2
  double spaceform_def;  // |R|^2 - Scal^2/(2n(n-1)), zero iff space form
  double sigma2;         // from 2(n-2)^2 sigma_2 = n|c^2R|^2/(4(n-1)) - |cR|^2
  double h4;
  double weyl_norm2;
};

// Quadratic curvature invariants with internal cross-checks:
// h_4 = |W|^2 + 2(n-2)(n-3) sigma_2, the sigma_2 display against sigma_2(A),
// and sigma_2 = Scal^2/(8n(n-1)) whenever the input is Einstein.
QuadraticInvariants quadratic_invariants(const CurvatureContext& ctx);

// Deficiencies usable from n >= 3.
double einstein_deficiency(const CurvatureContext& ctx);
double spaceform_deficiency(const CurvatureContext& ctx);

// Block-embedded Riemannian-product curvature. Asserts the product law
// h_4 = (h_4)_1 + Scal_1 Scal_2/2 + (h_4)_2, factors of dimension < 4
// contributing 0.
CurvatureContext product_curvature(const CurvatureContext& a, const CurvatureContext& b);

struct ProductSignReport {
  double min_sectional;
  double min_ricci_eig;
  double min_einstein_eig;
  double h4;
  double sigma2;
};

// Invariants of S^3(r) x S^p(1); for small r the sign pattern is
// sec >= 0, Ric > 0, T_2 > 0, h_4 > 0 while sigma_2 < 0.
ProductSignReport s3r_times_sp_signs(double r, int p);

// Sectional curvature of the plane spanned by orthonormal u, v.
double sectional_curvature(const dfalg::DoubleForm& riemann, std::span<const double> u,
                           std::span<const double> v);

}  // namespace gbcurv::curvinv
