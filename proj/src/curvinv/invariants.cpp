#include "gbcurv/curvinv/invariants.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "gbcurv/common.hpp"
#include "gbcurv/dfalg/subset_tables.hpp"
#include "gbcurv/rng.hpp"

namespace gbcurv::curvinv {

using dfalg::DoubleForm;

namespace {

constexpr double kCrossTol = 1e-9;

double dfact(int k) { return static_cast<double>(factorial(k)); }

void check_cross(double a, double b, const char* what) {
  if (rel_residual(a, b) > kCrossTol)
    throw ConsistencyError(std::string(what) + ": independent expressions disagree (" +
                           std::to_string(a) + " vs " + std::to_string(b) + ")");
}

void check_cross(const DoubleForm& a, const DoubleForm& b, const char* what) {
  if (dfalg::rel_residual(a, b) > kCrossTol)
    throw ConsistencyError(std::string(what) + ": independent expressions disagree entrywise");
}

// *(g^m w)/m! , the recurring star-of-metric-multiple pattern.
DoubleForm star_metric_multiple(const DoubleForm& w, int m) {
  const DoubleForm gm = DoubleForm::metric_power(w.n(), m);
  return dfalg::hodge_star(dfalg::exterior_product(gm, w)) * (1.0 / dfact(m));
}

DoubleForm newton_transform_of_power(const DoubleForm& wk, int p, int k, bool use_explicit) {
  const int n = wk.n();
  const DoubleForm star_value = star_metric_multiple(wk, n - p * k - p);
  if (use_explicit && k >= 1) {
    DoubleForm expl(n, p, p);
    for (int r = p * k - p; r <= p * k; ++r) {
      const int gpow = p - p * k + r;
      const DoubleForm term = dfalg::exterior_product(DoubleForm::metric_power(n, gpow),
                                                      dfalg::contract(wk, r));
      const double sgn = ((r + p * k) % 2 == 0) ? 1.0 : -1.0;
      expl += term * (sgn / (dfact(gpow) * dfact(r)));
    }
    check_cross(star_value, expl, "Newton transformation");
  }
  return star_value;
}

}  // namespace

double gauss_bonnet(const CurvatureContext& ctx, int k) {
  const int n = ctx.n();
  if (k < 0 || 2 * k > n) throw DegreeError("gauss_bonnet: need 0 <= 2k <= n");
  if (k == 0) return 1.0;
  const DoubleForm& rk = ctx.riemann_power(k);
  const double via_contraction = dfalg::contract(rk, 2 * k).scalar_value() / dfact(2 * k);
  const double via_star = star_metric_multiple(rk, n - 2 * k).scalar_value();
  check_cross(via_contraction, via_star, "gauss_bonnet");
  return via_contraction;
}

DoubleForm lovelock(const CurvatureContext& ctx, int k) {
  const int n = ctx.n();
  if (k < 0 || 2 * k > n) throw DegreeError("lovelock: need 0 <= 2k <= n");
  const DoubleForm g = DoubleForm::metric_power(n, 1);
  DoubleForm first = (k == 0)
                         ? g
                         : g * gauss_bonnet(ctx, k) -
                               dfalg::contract(ctx.riemann_power(k), 2 * k - 1) * (1.0 / dfact(2 * k - 1));
  if (2 * k < n) {
    const DoubleForm via_star = star_metric_multiple(ctx.riemann_power(k), n - 2 * k - 1);
    check_cross(first, via_star, "lovelock");
  }
  return first;
}

double sigma_k(const DoubleForm& h, int k) {
  if (h.p() != 1 || h.q() != 1) throw DegreeError("sigma_k needs a (1,1)-form");
  const int n = h.n();
  if (k < 0 || k > n) throw DegreeError("sigma_k: need 0 <= k <= n");
  if (k == 0) return 1.0;
  const DoubleForm hk = dfalg::power(h, k);
  const double via_contraction = dfalg::contract(hk, k).scalar_value() / (dfact(k) * dfact(k));
  const double via_star = star_metric_multiple(hk, n - k).scalar_value() / dfact(k);
  check_cross(via_contraction, via_star, "sigma_k");
  return via_contraction;
}

DoubleForm classic_newton(const DoubleForm& h, int k) {
  if (h.p() != 1 || h.q() != 1) throw DegreeError("classic_newton needs a (1,1)-form");
  const int n = h.n();
  if (k < 1 || k > n - 1) throw DegreeError("classic_newton: need 1 <= k <= n-1");
  const DoubleForm hk = dfalg::power(h, k);
  const DoubleForm via_star = star_metric_multiple(hk, n - k - 1) * (1.0 / dfact(k));
  const DoubleForm displayed = DoubleForm::metric_power(n, 1) * sigma_k(h, k) -
                               dfalg::contract(hk, k - 1) * (1.0 / (dfact(k - 1) * dfact(k)));
  check_cross(via_star, displayed, "classic_newton");
  return displayed;
}

DoubleForm newton_transform(const DoubleForm& w, int k) {
  if (w.p() != w.q()) throw DegreeError("newton_transform needs a (p,p)-form");
  const int p = w.p(), n = w.n();
  if (k < 0 || p * k > n - p) throw DegreeError("newton_transform: need 0 <= pk <= n-p");
  bool bianchi_ok = dfalg::is_symmetric(w, 1e-9);
  if (bianchi_ok && p == 2)
    bianchi_ok = dfalg::first_bianchi_residual(w) <= 1e-9 * std::max(1.0, dfalg::max_abs(w));
  if (p > 2) bianchi_ok = false;  // the expansion is only validated for p <= 2
  return newton_transform_of_power(dfalg::power(w, k), p, k, bianchi_ok);
}

DoubleForm newton_transform(const CurvatureContext& ctx, int k) {
  if (k < 0 || 2 * k > ctx.n() - 2) throw DegreeError("newton_transform: need 0 <= 2k <= n-2");
  return newton_transform_of_power(ctx.riemann_power(k), 2, k, true);
}

namespace {

double newton_formula_impl(const DoubleForm& w, const DoubleForm& nk, const DoubleForm& wk1, int p, int k) {
  const double lhs = dfalg::inner_product(nk, w);
  const double rhs = dfalg::contract(wk1, p * k + p).scalar_value() / dfact(p * k + p);
  return rel_residual(lhs, rhs);
}

}  // namespace

double newton_formula_residual(const DoubleForm& w, int k) {
  const int p = w.p();
  if (p * (k + 1) > w.n()) throw DegreeError("newton_formula: need (k+1)p <= n");
  return newton_formula_impl(w, newton_transform(w, k), dfalg::power(w, k + 1), p, k);
}

double newton_formula_residual(const CurvatureContext& ctx, int k) {
  if (2 * (k + 1) > ctx.n()) throw DegreeError("newton_formula: need 2(k+1) <= n");
  const DoubleForm nk = newton_transform(ctx, k);
  // For the curvature tensor the formula must reproduce the next
  // Gauss-Bonnet curvature.
  check_cross(dfalg::inner_product(nk, ctx.riemann()), gauss_bonnet(ctx, k + 1),
              "newton_formula h_(2k+2)");
  return newton_formula_impl(ctx.riemann(), nk, ctx.riemann_power(k + 1), 2, k);
}

double newton_gb_residual(const CurvatureContext& ctx, int k) {
  if (2 * (k + 1) > ctx.n()) throw DegreeError("newton_gb: need 2(k+1) <= n");
  return rel_residual(dfalg::inner_product(newton_transform(ctx, k), ctx.riemann()),
                      gauss_bonnet(ctx, k + 1));
}

double h2k_cross_residual(const CurvatureContext& ctx, int k) {
  const int n = ctx.n();
  if (k < 0 || 2 * k > n) throw DegreeError("h2k_cross: need 0 <= 2k <= n");
  if (k == 0) return 0.0;
  const DoubleForm& rk = ctx.riemann_power(k);
  return rel_residual(dfalg::contract(rk, 2 * k).scalar_value() / dfact(2 * k),
                      star_metric_multiple(rk, n - 2 * k).scalar_value());
}

double lovelock_cross_residual(const CurvatureContext& ctx, int k) {
  const int n = ctx.n();
  if (k < 0 || 2 * k >= n) throw DegreeError("lovelock_cross: need 0 <= 2k < n");
  const DoubleForm g = DoubleForm::metric_power(n, 1);
  const DoubleForm first =
      (k == 0) ? g
               : g * gauss_bonnet(ctx, k) -
                     dfalg::contract(ctx.riemann_power(k), 2 * k - 1) * (1.0 / dfact(2 * k - 1));
  return dfalg::rel_residual(first, star_metric_multiple(ctx.riemann_power(k), n - 2 * k - 1));
}

double sigma_cross_residual(const dfalg::DoubleForm& h, int k) {
  if (h.p() != 1 || h.q() != 1) throw DegreeError("sigma_cross needs a (1,1)-form");
  const int n = h.n();
  if (k < 0 || k > n) throw DegreeError("sigma_cross: need 0 <= k <= n");
  if (k == 0) return 0.0;
  const DoubleForm hk = dfalg::power(h, k);
  return rel_residual(dfalg::contract(hk, k).scalar_value() / (dfact(k) * dfact(k)),
                      star_metric_multiple(hk, n - k).scalar_value() / dfact(k));
}

namespace {

double newton_explicit_residual_impl(const DoubleForm& wk, int p, int k) {
  const int n = wk.n();
  const DoubleForm star_value = star_metric_multiple(wk, n - p * k - p);
  DoubleForm expl(n, p, p);
  for (int r = p * k - p; r <= p * k; ++r) {
    const int gpow = p - p * k + r;
    const DoubleForm term =
        dfalg::exterior_product(DoubleForm::metric_power(n, gpow), dfalg::contract(wk, r));
    const double sgn = ((r + p * k) % 2 == 0) ? 1.0 : -1.0;
    expl += term * (sgn / (dfact(gpow) * dfact(r)));
  }
  return dfalg::rel_residual(star_value, expl);
}

}  // namespace

double newton_explicit_residual(const dfalg::DoubleForm& w, int k) {
  if (w.p() != w.q()) throw DegreeError("newton_explicit needs a (p,p)-form");
  if (k < 1 || w.p() * k > w.n() - w.p()) throw DegreeError("newton_explicit: need 1 <= pk <= n-p");
  return newton_explicit_residual_impl(dfalg::power(w, k), w.p(), k);
}

double newton_explicit_residual(const CurvatureContext& ctx, int k) {
  if (k < 1 || 2 * k > ctx.n() - 2) throw DegreeError("newton_explicit: need 1 <= 2k <= n-2");
  return newton_explicit_residual_impl(ctx.riemann_power(k), 2, k);
}

double classic_newton_recursion_residual(const dfalg::DoubleForm& h, int k) {
  const int n = h.n();
  if (k < 1 || k > n - 1) throw DegreeError("classic_newton recursion: need 1 <= k <= n-1");
  const DoubleForm tk = classic_newton(h, k);
  const DoubleForm tprev = (k == 1) ? DoubleForm::metric_power(n, 1) : classic_newton(h, k - 1);
  const linalg::Mat comp = linalg::matmul(dfalg::to_matrix(h), dfalg::to_matrix(tprev));
  const DoubleForm recursion =
      DoubleForm::metric_power(n, 1) * sigma_k(h, k) - DoubleForm::from_matrix(comp);
  const double r1 = dfalg::rel_residual(tk, recursion);
  const double r2 = rel_residual(dfalg::contract(tk, 1).scalar_value(), (n - k) * sigma_k(h, k));
  return std::max(r1, r2);
}

double avez_type_residual(const CurvatureContext& ctx, int k) {
  const int n = ctx.n();
  if (k < 1 || 2 * k + 2 > n) throw DegreeError("avez_type: need 4 <= 2k+2 <= n");
  const DoubleForm& rk = ctx.riemann_power(k);
  const double t1 = dfalg::inner_product(dfalg::contract(rk, 2 * k - 2), ctx.riemann()) / dfact(2 * k - 2);
  const double t2 = dfalg::inner_product(dfalg::contract(rk, 2 * k - 1), ctx.ricci()) / dfact(2 * k - 1);
  const double rhs = t1 - t2 + gauss_bonnet(ctx, k) * gauss_bonnet(ctx, 1);
  return rel_residual(gauss_bonnet(ctx, k + 1), rhs);
}

std::optional<double> pq_einstein_h_residual(const CurvatureContext& ctx, int k) {
  const int n = ctx.n();
  if (k < 1 || 2 * k + 2 > n) throw DegreeError("pq_einstein: need 4 <= 2k+2 <= n");
  const DoubleForm contracted = dfalg::contract(ctx.riemann_power(k), 2 * k - 2);
  const DoubleForm g2 = DoubleForm::metric_power(n, 2);
  const double lambda = dfalg::inner_product(contracted, g2) / dfalg::inner_product(g2, g2);
  const double dev = dfalg::max_abs_diff(contracted, g2 * lambda);
  if (dev > 1e-8 * std::max(1.0, dfalg::max_abs(contracted))) return std::nullopt;
  const double coef =
      2.0 * k * (2.0 * k - 1.0) / (static_cast<double>(n) * (n - 1)) + static_cast<double>(n - 4 * k) / n;
  return rel_residual(gauss_bonnet(ctx, k + 1), coef * gauss_bonnet(ctx, k) * gauss_bonnet(ctx, 1));
}

std::pair<double, double> trace_relations_residual(const CurvatureContext& ctx, int k) {
  const int n = ctx.n();
  if (k < 0 || 2 * k > n - 2) throw DegreeError("trace_relations: need 0 <= 2k <= n-2");
  const DoubleForm nk = newton_transform(ctx, k);
  const double first = dfalg::rel_residual(dfalg::contract(nk, 1), lovelock(ctx, k) * (n - 2.0 * k - 1.0));
  const double second = rel_residual(dfalg::contract(nk, 2).scalar_value(),
                                     (n - 2.0 * k) * (n - 2.0 * k - 1.0) * gauss_bonnet(ctx, k));
  return {first, second};
}

double gnf_residual(const DoubleForm& w, const DoubleForm& h, int k) {
  if (w.p() != w.q()) throw DegreeError("gnf: omega must be a (p,p)-form");
  if (h.p() != 1 || h.q() != 1) throw DegreeError("gnf: h must be a (1,1)-form");
  const int p = w.p(), n = w.n();
  if (k < 0 || p + k > n) throw DegreeError("gnf: need 0 <= k <= n-p");
  const DoubleForm hk = dfalg::power(h, k);
  const double lhs =
      dfalg::contract(dfalg::exterior_product(w, hk), p + k).scalar_value() / dfact(p + k);
  const double rhs = dfalg::inner_product(star_metric_multiple(w, n - p - k), hk);
  return rel_residual(lhs, rhs);
}

double sigma_weyl_split_residual(const CurvatureContext& ctx, int k) {
  const int n = ctx.n();
  if (k < 0 || 2 * k > n) throw DegreeError("sigma_weyl_split: need 0 <= 2k <= n");
  const DoubleForm& a = ctx.schouten();
  const DoubleForm& w = ctx.weyl();
  double rhs = dfact(n - k) * dfact(k) / dfact(n - 2 * k) * sigma_k(a, k);
  for (int i = 0; i < k; ++i) {
    const DoubleForm gai =
        dfalg::exterior_product(DoubleForm::metric_power(n, n - 2 * k + i), dfalg::power(a, i));
    const double coef = dfact(k) / (dfact(i) * dfact(k - i) * dfact(n - 2 * k));
    rhs += coef * dfalg::inner_product(dfalg::hodge_star(gai), dfalg::power(w, k - i));
  }
  return rel_residual(gauss_bonnet(ctx, k), rhs);
}

double einstein_deficiency(const CurvatureContext& ctx) {
  const double ric2 = dfalg::inner_product(ctx.ricci(), ctx.ricci());
  const double scal = ctx.scalar_curvature();
  return ric2 - scal * scal / ctx.n();
}

double spaceform_deficiency(const CurvatureContext& ctx) {
  const double r2 = dfalg::inner_product(ctx.riemann(), ctx.riemann());
  const double scal = ctx.scalar_curvature();
  return r2 - scal * scal / (2.0 * ctx.n() * (ctx.n() - 1));
}

QuadraticInvariants quadratic_invariants(const CurvatureContext& ctx) {
  const int n = ctx.n();
  if (n < 4) throw DimensionError("quadratic_invariants needs n >= 4");
  QuadraticInvariants q{};
  const double r2 = dfalg::inner_product(ctx.riemann(), ctx.riemann());
  const double ric2 = dfalg::inner_product(ctx.ricci(), ctx.ricci());
  const double scal = ctx.scalar_curvature();
  q.einstein_def = ric2 - scal * scal / n;
  q.confflat_def = r2 - ric2 / (n - 2) + scal * scal / (2.0 * (n - 1) * (n - 2));
  q.spaceform_def = r2 - scal * scal / (2.0 * n * (n - 1));
  q.sigma2 = (n * scal * scal / (4.0 * (n - 1)) - ric2) / (2.0 * (n - 2) * (n - 2));
  q.h4 = gauss_bonnet(ctx, 2);
  q.weyl_norm2 = dfalg::inner_product(ctx.weyl(), ctx.weyl());
  const double scale2 = std::max(1.0, r2);
  check_cross(q.sigma2, sigma_k(ctx.schouten(), 2), "sigma_2 quadratic display");
  check_cross(q.h4, q.weyl_norm2 + 2.0 * (n - 2) * (n - 3) * q.sigma2, "h_4 Weyl/sigma_2 split");
  if (std::abs(q.confflat_def - q.weyl_norm2) > kCrossTol * scale2)
    throw ConsistencyError("conformal-flatness deficiency does not match |W|^2");
  if (std::abs(q.einstein_def) < 1e-10 * scale2)
    check_cross(q.sigma2, scal * scal / (8.0 * n * (n - 1)), "Einstein sigma_2");
  return q;
}

CurvatureContext product_curvature(const CurvatureContext& a, const CurvatureContext& b) {
  const int n1 = a.n(), n2 = b.n(), n = n1 + n2;
  if (n > kMaxDim) throw DimensionError("product dimension exceeds " + std::to_string(kMaxDim));
  const std::uint32_t low = (1u << n1) - 1u;
  const auto& rows1 = dfalg::SubsetTable::get(n1, 2);
  const auto& rows = dfalg::SubsetTable::get(n, 2);
  DoubleForm r(n, 2, 2);
  for (int i = 0; i < r.rows(); ++i) {
    const std::uint32_t mi = rows.mask(i);
    const bool i_low = (mi & ~low) == 0, i_high = (mi & low) == 0;
    if (!i_low && !i_high) continue;
    for (int j = 0; j < r.cols(); ++j) {
      const std::uint32_t mj = rows.mask(j);
      if (i_low && (mj & ~low) == 0) {
        r.at(i, j) = a.riemann().at(rows1.rank(mi), rows1.rank(mj));
      } else if (i_high && (mj & low) == 0) {
        const auto& rows2 = dfalg::SubsetTable::get(n2, 2);
        r.at(i, j) = b.riemann().at(rows2.rank(mi >> n1), rows2.rank(mj >> n1));
      }
    }
  }
  CurvatureContext prod(std::move(r));
  if (n >= 4) {
    const double h4_1 = (n1 >= 4) ? gauss_bonnet(a, 2) : 0.0;
    const double h4_2 = (n2 >= 4) ? gauss_bonnet(b, 2) : 0.0;
    const double law = h4_1 + 0.5 * a.scalar_curvature() * b.scalar_curvature() + h4_2;
    check_cross(gauss_bonnet(prod, 2), law, "product h_4 law");
  }
  return prod;
}

double sectional_curvature(const DoubleForm& riemann, std::span<const double> u,
                           std::span<const double> v) {
  const int n = riemann.n();
  const auto& pairs = dfalg::SubsetTable::get(n, 2);
  // R(u,v;w,z) expanded over the decomposable bivector coefficients.
  std::vector<double> biv(static_cast<std::size_t>(pairs.count()));
  for (int r = 0; r < pairs.count(); ++r) {
    const std::uint32_t m = pairs.mask(r);
    const int i = __builtin_ctz(m);
    const int j = __builtin_ctz(m & (m - 1));
    biv[static_cast<std::size_t>(r)] = u[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)] -
                                       u[static_cast<std::size_t>(j)] * v[static_cast<std::size_t>(i)];
  }
  double num = 0.0, den = 0.0;
  for (int r = 0; r < pairs.count(); ++r) {
    den += biv[static_cast<std::size_t>(r)] * biv[static_cast<std::size_t>(r)];
    for (int c = 0; c < pairs.count(); ++c)
      num += biv[static_cast<std::size_t>(r)] * biv[static_cast<std::size_t>(c)] * riemann.at(r, c);
  }
  if (den < 1e-12) throw EvalError("sectional curvature of a degenerate plane");
  return num / den;
}

ProductSignReport s3r_times_sp_signs(double r, int p) {
  if (!(r > 0.0)) throw ConfigError("sphere radius must be positive");
  if (p < 2) throw ConfigError("need p >= 2");
  const CurvatureContext s3 = space_form_context(3, 1.0 / (r * r));
  const CurvatureContext sp = space_form_context(p, 1.0);
  const CurvatureContext prod = product_curvature(s3, sp);
  const int n = prod.n();

  ProductSignReport rep{};
  rep.h4 = gauss_bonnet(prod, 2);
  rep.sigma2 = sigma_k(prod.schouten(), 2);

  const linalg::Mat ric = dfalg::to_matrix(prod.ricci());
  rep.min_ricci_eig = linalg::jacobi_eigenvalues(ric).front();
  linalg::Mat t2 = linalg::Mat::identity(n) * gauss_bonnet(prod, 1) - ric;
  rep.min_einstein_eig = linalg::jacobi_eigenvalues(t2).front();

  double min_sec = std::numeric_limits<double>::infinity();
  std::vector<double> u(static_cast<std::size_t>(n)), v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      std::fill(u.begin(), u.end(), 0.0);
      std::fill(v.begin(), v.end(), 0.0);
      u[static_cast<std::size_t>(i)] = 1.0;
      v[static_cast<std::size_t>(j)] = 1.0;
      min_sec = std::min(min_sec, sectional_curvature(prod.riemann(), u, v));
    }
  Rng rng(20240613u);
  for (int trial = 0; trial < 200; ++trial) {
    double nu = 0.0;
    for (auto& x : u) {
      x = rng.gaussian();
      nu += x * x;
    }
    nu = std::sqrt(nu);
    for (auto& x : u) x /= nu;
    double dot = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      v[i] = rng.gaussian();
      dot += v[i] * u[i];
    }
    double nv = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      v[i] -= dot * u[i];
      nv += v[i] * v[i];
    }
    nv = std::sqrt(nv);
    if (nv < 1e-6) continue;
    for (auto& x : v) x /= nv;
    min_sec = std::min(min_sec, sectional_curvature(prod.riemann(), u, v));
  }
  rep.min_sectional = min_sec;
  return rep;
}

}  // namespace gbcurv::curvinv
