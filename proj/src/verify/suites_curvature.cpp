#include <algorithm>
#include <cmath>
#include <functional>

#include "gbcurv/common.hpp"
#include "gbcurv/curvinv/invariants.hpp"
#include "gbcurv/linalg.hpp"
#include "gbcurv/parallel.hpp"
#include "gbcurv/rng.hpp"
#include "gbcurv/verify/suites.hpp"

namespace gbcurv::verify {

using curvinv::CurvatureContext;
using dfalg::DoubleForm;

namespace {

linalg::Mat random_symmetric(Rng& rng, int n) {
  linalg::Mat h(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) h(i, j) = h(j, i) = rng.gaussian();
  return h;
}

// Conformally flat context R = gA from a random symmetric A; W vanishes.
CurvatureContext conformally_flat_context(Rng& rng, int n) {
  const DoubleForm a = DoubleForm::from_matrix(random_symmetric(rng, n));
  return CurvatureContext(dfalg::exterior_product(DoubleForm::metric_power(n, 1), a));
}

struct TrialMax {
  std::vector<double> slots;
  explicit TrialMax(int trials) : slots(static_cast<std::size_t>(trials), 0.0) {}
  double result() const {
    double worst = 0.0;
    for (double r : slots) worst = std::max(worst, r);
    return worst;
  }
};

}  // namespace

std::vector<Row> curvature_identity_suite(const Options& opt) {
  std::vector<Row> rows;
  const int n_lo = std::max(3, opt.n_lo);
  const int n_hi = std::min(8, std::max(n_lo, opt.n_hi));

  for (int n = n_lo; n <= n_hi; ++n) {
    nlohmann::json params{{"n", n}, {"trials", opt.trials}, {"seed", opt.seed}};
    const int kcap = (opt.k_max < 0) ? n / 2 : std::min(opt.k_max, n / 2);

    TrialMax h2k(opt.trials), lovecross(opt.trials), lovetop(opt.trials), schouten(opt.trials),
        weyl(opt.trials), sigeig(opt.trials), split(opt.trials), h4split(opt.trials),
        s2disp(opt.trials), avez(opt.trials), avezh(opt.trials), confflat(opt.trials);
    parallel_for(static_cast<std::size_t>(opt.trials), opt.jobs, [&](std::size_t t) {
      Rng rng(opt.seed * 0x9e3779b9u + t * 0x85ebca6bu + static_cast<std::uint64_t>(n));
      const int summands = 2 + rng.uniform_int(0, 3);
      const CurvatureContext ctx =
          curvinv::random_curvature(n, summands, opt.seed + 1000 * t + static_cast<std::uint64_t>(n));

      for (int k = 0; k <= kcap; ++k) h2k.slots[t] = std::max(h2k.slots[t], curvinv::h2k_cross_residual(ctx, k));
      for (int k = 0; 2 * k < n && k <= kcap; ++k)
        lovecross.slots[t] = std::max(lovecross.slots[t], curvinv::lovelock_cross_residual(ctx, k));
      if (n % 2 == 0)
        lovetop.slots[t] = dfalg::max_abs(curvinv::lovelock(ctx, n / 2)) /
                           std::max(1.0, dfalg::max_abs(ctx.riemann_power(n / 2)));

      const DoubleForm g = DoubleForm::metric_power(n, 1);
      const DoubleForm ga = dfalg::exterior_product(g, ctx.schouten());
      schouten.slots[t] = dfalg::max_abs(dfalg::contract(ctx.riemann() - ga, 1)) /
                          std::max(1.0, dfalg::max_abs(ctx.riemann()));
      weyl.slots[t] = dfalg::max_abs(dfalg::contract(ctx.weyl(), 1)) /
                      std::max(1.0, dfalg::max_abs(ctx.weyl()));

      // sigma_k against the eigenvalue oracle, on an independent random h.
      const linalg::Mat hm = random_symmetric(rng, n);
      const DoubleForm h = DoubleForm::from_matrix(hm);
      const auto eig = linalg::jacobi_eigenvalues(hm);
      const auto elem = linalg::elementary_symmetric(eig);
      for (int k = 0; k <= n; ++k) {
        sigeig.slots[t] = std::max(sigeig.slots[t],
                                   rel_residual(curvinv::sigma_k(h, k), elem[static_cast<std::size_t>(k)]));
        sigeig.slots[t] = std::max(sigeig.slots[t], curvinv::sigma_cross_residual(h, k));
      }

      for (int k = 0; k <= std::min(3, kcap); ++k)
        split.slots[t] = std::max(split.slots[t], curvinv::sigma_weyl_split_residual(ctx, k));

      if (n >= 4) {
        const auto quad = curvinv::quadratic_invariants(ctx);
        h4split.slots[t] =
            rel_residual(quad.h4, quad.weyl_norm2 + 2.0 * (n - 2) * (n - 3) * quad.sigma2);
        s2disp.slots[t] = rel_residual(quad.sigma2, curvinv::sigma_k(ctx.schouten(), 2));
        avez.slots[t] = curvinv::avez_type_residual(ctx, 1);
        for (int k = 2; 2 * k + 2 <= n && k <= kcap; ++k)
          avezh.slots[t] = std::max(avezh.slots[t], curvinv::avez_type_residual(ctx, k));
      }

      const CurvatureContext flat = conformally_flat_context(rng, n);
      for (int k = 0; 2 * k <= n; ++k) {
        const double coef = static_cast<double>(factorial(n - k)) * factorial(k) / factorial(n - 2 * k);
        confflat.slots[t] = std::max(
            confflat.slots[t], rel_residual(curvinv::gauss_bonnet(flat, k),
                                            coef * curvinv::sigma_k(flat.schouten(), k)));
      }
    });

    rows.push_back(make_row("curv.h2k_cross", params, 0.0, 0.0, h2k.result(),
                            opt.tol_for("curv.h2k_cross", 1e-9)));
    rows.push_back(make_row("curv.lovelock_cross", params, 0.0, 0.0, lovecross.result(),
                            opt.tol_for("curv.lovelock_cross", 1e-9)));
    if (n % 2 == 0)
      rows.push_back(make_row("curv.lovelock_top", params, 0.0, 0.0, lovetop.result(),
                              opt.tol_for("curv.lovelock_top", n == 4 ? 1e-9 : 1e-8)));
    rows.push_back(make_row("curv.schouten_trace", params, 0.0, 0.0, schouten.result(),
                            opt.tol_for("curv.schouten_trace", 1e-10)));
    rows.push_back(make_row("curv.weyl_traceless", params, 0.0, 0.0, weyl.result(),
                            opt.tol_for("curv.weyl_traceless", 1e-10)));
    rows.push_back(make_row("curv.sigma_eigen", params, 0.0, 0.0, sigeig.result(),
                            opt.tol_for("curv.sigma_eigen", 1e-9)));
    rows.push_back(make_row("curv.theorem_split", params, 0.0, 0.0, split.result(),
                            opt.tol_for("curv.theorem_split", 1e-8)));
    rows.push_back(make_row("curv.confflat_h2k", params, 0.0, 0.0, confflat.result(),
                            opt.tol_for("curv.confflat_h2k", 1e-10)));
    if (n >= 4) {
      rows.push_back(make_row("curv.h4_weyl_sigma2", params, 0.0, 0.0, h4split.result(),
                              opt.tol_for("curv.h4_weyl_sigma2", 1e-9)));
      rows.push_back(make_row("curv.sigma2_display", params, 0.0, 0.0, s2disp.result(),
                              opt.tol_for("curv.sigma2_display", 1e-9)));
      rows.push_back(
          make_row("curv.avez", params, 0.0, 0.0, avez.result(), opt.tol_for("curv.avez", 1e-9)));
      if (n >= 6)
        rows.push_back(make_row("curv.avez_higher", params, 0.0, 0.0, avezh.result(),
                                opt.tol_for("curv.avez_higher", 1e-9)));
    }

    // Deficiency separations: the matching witness sits at zero, generic
    // inputs stay separated.
    {
      Rng rng(opt.seed + static_cast<std::uint64_t>(n) * 7919);
      const CurvatureContext generic = curvinv::random_curvature(n, 5, opt.seed + 77 + n);
      const double scale = std::max(1.0, dfalg::inner_product(generic.riemann(), generic.riemann()));
      const CurvatureContext sf = curvinv::space_form_context(n, 1.0 + rng.uniform());

      double einstein_w = std::abs(curvinv::einstein_deficiency(sf));
      if (n >= 4) {
        // An Einstein, non-space-form witness: S^(n/2) x S^(n/2) when n is
        // even, otherwise the round sphere again.
        if (n % 2 == 0) {
          const CurvatureContext half = curvinv::space_form_context(n / 2, 1.0);
          einstein_w = std::max(einstein_w, std::abs(curvinv::einstein_deficiency(
                                                curvinv::product_curvature(half, half))));
        }
      }
      const double einstein_g = std::abs(curvinv::einstein_deficiency(generic)) / scale;
      rows.push_back(make_row("curv.deficiency_einstein", params, einstein_w, einstein_g,
                              einstein_w + (einstein_g > 1e-3 ? 0.0 : 1.0),
                              opt.tol_for("curv.deficiency_einstein", 1e-10)));

      if (n >= 4) {
        const CurvatureContext cf = conformally_flat_context(rng, n);
        const auto qw = curvinv::quadratic_invariants(cf);
        const auto qg = curvinv::quadratic_invariants(generic);
        const double cf_scale = std::max(1.0, dfalg::inner_product(cf.riemann(), cf.riemann()));
        rows.push_back(make_row("curv.deficiency_confflat", params, qw.confflat_def / cf_scale,
                                qg.confflat_def / scale,
                                std::abs(qw.confflat_def) / cf_scale +
                                    (qg.confflat_def / scale > 1e-3 ? 0.0 : 1.0),
                                opt.tol_for("curv.deficiency_confflat", 1e-10)));
      }

      const double sf_w = std::abs(curvinv::spaceform_deficiency(sf));
      const double sf_g = std::abs(curvinv::spaceform_deficiency(generic)) / scale;
      rows.push_back(make_row("curv.deficiency_spaceform", params, sf_w, sf_g,
                              sf_w + (sf_g > 1e-3 ? 0.0 : 1.0),
                              opt.tol_for("curv.deficiency_spaceform", 1e-10)));
    }
  }

  // Dimension-independent closed-form rows.
  {
    nlohmann::json params{{"seed", opt.seed}};
    double einstein_s2 = 0.0;
    for (int n : {4, 5, 6, 8}) {
      const CurvatureContext sf = curvinv::space_form_context(n, 1.25);
      const auto q = curvinv::quadratic_invariants(sf);
      const double scal = sf.scalar_curvature();
      einstein_s2 = std::max(einstein_s2, rel_residual(q.sigma2, scal * scal / (8.0 * n * (n - 1))));
    }
    {
      // S^2(1) x S^2(1) is Einstein but not a space form.
      const CurvatureContext prod = curvinv::product_curvature(curvinv::space_form_context(2, 1.0),
                                                               curvinv::space_form_context(2, 1.0));
      const auto q = curvinv::quadratic_invariants(prod);
      const double scal = prod.scalar_curvature();
      einstein_s2 = std::max(einstein_s2, rel_residual(q.sigma2, scal * scal / (8.0 * 4 * 3)));
    }
    rows.push_back(make_row("curv.einstein_sigma2", params, 0.0, 0.0, einstein_s2,
                            opt.tol_for("curv.einstein_sigma2", 1e-10)));

    double sf_h4 = 0.0;
    for (int n : {4, 5, 6}) {
      const CurvatureContext sf = curvinv::space_form_context(n, 1.0);
      const double expect = static_cast<double>(factorial(n)) / (4.0 * factorial(n - 4));
      sf_h4 = std::max(sf_h4, rel_residual(curvinv::gauss_bonnet(sf, 2), expect));
    }
    rows.push_back(make_row("curv.spaceform_h4", params, 0.0, 0.0, sf_h4,
                            opt.tol_for("curv.spaceform_h4", 1e-10)));

    // Product law: S^2 x S^2, two random 3-dim factors, and a flat factor.
    double product_res = 0.0;
    {
      const CurvatureContext s2s2 = curvinv::product_curvature(curvinv::space_form_context(2, 1.0),
                                                               curvinv::space_form_context(2, 1.0));
      product_res = rel_residual(curvinv::gauss_bonnet(s2s2, 2), 2.0);
      const CurvatureContext a = curvinv::random_curvature(3, 3, opt.seed + 5);
      const CurvatureContext b = curvinv::random_curvature(3, 3, opt.seed + 6);
      const CurvatureContext ab = curvinv::product_curvature(a, b);
      product_res = std::max(product_res,
                             rel_residual(curvinv::gauss_bonnet(ab, 2),
                                          0.5 * a.scalar_curvature() * b.scalar_curvature()));
      const CurvatureContext flat(DoubleForm(3, 2, 2));
      const CurvatureContext c = curvinv::random_curvature(4, 4, opt.seed + 7);
      const CurvatureContext cf = curvinv::product_curvature(c, flat);
      product_res = std::max(
          product_res, rel_residual(curvinv::gauss_bonnet(cf, 2), curvinv::gauss_bonnet(c, 2)));
    }
    rows.push_back(make_row("curv.product_h4", params, 0.0, 0.0, product_res,
                            opt.tol_for("curv.product_h4", 1e-9)));

    // Sign pattern of S^3(r) x S^p for small r.
    double sign_res = 0.0;
    double sigma2_small = 0.0, h4_small = 0.0;
    for (int p : {2, 3}) {
      const auto rep = curvinv::s3r_times_sp_signs(0.1, p);
      if (p == 2) {
        sigma2_small = rep.sigma2;
        h4_small = rep.h4;
      }
      if (rep.min_sectional < -1e-12) sign_res += 1.0;
      if (!(rep.min_ricci_eig > 0.0)) sign_res += 1.0;
      if (!(rep.min_einstein_eig > 0.0)) sign_res += 1.0;
      if (!(rep.h4 > 0.0)) sign_res += 1.0;
      if (!(rep.sigma2 < 0.0)) sign_res += 1.0;
    }
    // r = 1 flips sigma_2 positive (closed form 1/3); large r goes negative.
    sign_res += rel_residual(curvinv::s3r_times_sp_signs(1.0, 2).sigma2, 1.0 / 3.0);
    if (!(curvinv::s3r_times_sp_signs(10.0, 2).sigma2 < 0.0)) sign_res += 1.0;
    rows.push_back(make_row("curv.s3xsp_signs", {{"r", 0.1}, {"p", "2,3"}}, h4_small, sigma2_small,
                            sign_res, opt.tol_for("curv.s3xsp_signs", 1e-9)));
  }
  return rows;
}

}  // namespace gbcurv::verify
