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

DoubleForm random_h(Rng& rng, int n) {
  linalg::Mat h(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) h(i, j) = h(j, i) = rng.gaussian();
  return DoubleForm::from_matrix(h);
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

std::vector<Row> newton_suite(const Options& opt) {
  std::vector<Row> rows;
  const int n_lo = std::max(3, opt.n_lo);
  const int n_hi = std::min(8, std::max(n_lo, opt.n_hi));

  for (int n = n_lo; n <= n_hi; ++n) {
    nlohmann::json params{{"n", n}, {"trials", opt.trials}, {"seed", opt.seed}};
    const int kcap_opt = opt.k_max < 0 ? n : opt.k_max;
    const int kcap_r = std::min((n - 2) / 2, kcap_opt);  // admissible k for N_k(R)

    TrialMax expl(opt.trials), formula(opt.trials), gb(opt.trials), tr1(opt.trials),
        tr2(opt.trials), lin(opt.trials), sadj(opt.trials), tfree(opt.trials), classic(opt.trials),
        gnf(opt.trials);
    parallel_for(static_cast<std::size_t>(opt.trials), opt.jobs, [&](std::size_t t) {
      Rng rng(opt.seed * 0x2545f491u + t * 0x9e3779b9u + static_cast<std::uint64_t>(n));
      const CurvatureContext ctx =
          curvinv::random_curvature(n, 3 + rng.uniform_int(0, 2),
                                    opt.seed + 9000 * t + static_cast<std::uint64_t>(n));
      const DoubleForm h = random_h(rng, n);

      // Explicit expansion vs star definition, w = R (p=2) and w = h (p=1).
      for (int k = 1; k <= std::min(3, kcap_r); ++k)
        expl.slots[t] = std::max(expl.slots[t], curvinv::newton_explicit_residual(ctx, k));
      for (int k = 1; k <= std::min(n - 1, kcap_opt); ++k)
        expl.slots[t] = std::max(expl.slots[t], curvinv::newton_explicit_residual(h, k));

      // Newton formula and the Gauss-Bonnet consequence.
      for (int k = 0; k <= kcap_r && 2 * (k + 1) <= n; ++k) {
        formula.slots[t] = std::max(formula.slots[t], curvinv::newton_formula_residual(ctx, k));
        gb.slots[t] = std::max(gb.slots[t], curvinv::newton_gb_residual(ctx, k));
      }
      for (int k = 0; k + 1 <= n - 1 && k <= kcap_opt; ++k)
        formula.slots[t] = std::max(formula.slots[t], curvinv::newton_formula_residual(h, k));
      // A Gauss-type (2,2) input exercises the formula away from R.
      const DoubleForm h2form = dfalg::power(h, 2);
      for (int k = 0; 2 * (k + 1) <= n; ++k)
        formula.slots[t] = std::max(formula.slots[t], curvinv::newton_formula_residual(h2form, k));

      for (int k = 0; k <= kcap_r; ++k) {
        const auto [first, full] = curvinv::trace_relations_residual(ctx, k);
        tr1.slots[t] = std::max(tr1.slots[t], first);
        tr2.slots[t] = std::max(tr2.slots[t], full);
      }

      // N_1 linearity and self-adjointness on Bianchi pairs.
      if (n >= 4) {
        const CurvatureContext ctx2 =
            curvinv::random_curvature(n, 3, opt.seed + 131 * t + static_cast<std::uint64_t>(n));
        const DoubleForm& w1 = ctx.riemann();
        const DoubleForm& w2 = ctx2.riemann();
        const double a = rng.uniform(-2.0, 2.0), b = rng.uniform(-2.0, 2.0);
        const DoubleForm combo = w1 * a + w2 * b;
        lin.slots[t] = dfalg::rel_residual(curvinv::newton_transform(combo, 1),
                                           curvinv::newton_transform(w1, 1) * a +
                                               curvinv::newton_transform(w2, 1) * b);
        sadj.slots[t] = rel_residual(dfalg::inner_product(curvinv::newton_transform(w1, 1), w2),
                                     dfalg::inner_product(w1, curvinv::newton_transform(w2, 1)));
        // Weyl parts are symmetric, Bianchi and trace free; N_1 fixes them.
        tfree.slots[t] = dfalg::rel_residual(curvinv::newton_transform(ctx.weyl(), 1), ctx.weyl());
      }

      for (int k = 1; k <= std::min(n - 1, kcap_opt); ++k)
        classic.slots[t] = std::max(classic.slots[t], curvinv::classic_newton_recursion_residual(h, k));

      // General Newton formula with scalar output.
      const DoubleForm hb = random_h(rng, n);
      for (int k = 0; k <= 2 && 2 + k <= n; ++k)
        gnf.slots[t] = std::max(gnf.slots[t], curvinv::gnf_residual(ctx.riemann(), hb, k));
      const DoubleForm g = DoubleForm::metric_power(n, 1);
      for (int k = 0; k <= 2 && 1 + k <= n; ++k)
        gnf.slots[t] = std::max(gnf.slots[t], curvinv::gnf_residual(g, hb, k));
    });

    rows.push_back(make_row("newton.explicit", params, 0.0, 0.0, expl.result(),
                            opt.tol_for("newton.explicit", 1e-9)));
    rows.push_back(make_row("newton.formula", params, 0.0, 0.0, formula.result(),
                            opt.tol_for("newton.formula", 1e-9)));
    rows.push_back(
        make_row("newton.gb", params, 0.0, 0.0, gb.result(), opt.tol_for("newton.gb", 1e-9)));
    rows.push_back(make_row("newton.trace_first", params, 0.0, 0.0, tr1.result(),
                            opt.tol_for("newton.trace_first", 1e-9)));
    rows.push_back(make_row("newton.trace_full", params, 0.0, 0.0, tr2.result(),
                            opt.tol_for("newton.trace_full", 1e-9)));
    if (n >= 4) {
      rows.push_back(make_row("newton.n1_linear", params, 0.0, 0.0, lin.result(),
                              opt.tol_for("newton.n1_linear", 1e-10)));
      rows.push_back(make_row("newton.n1_selfadjoint", params, 0.0, 0.0, sadj.result(),
                              opt.tol_for("newton.n1_selfadjoint", 1e-10)));
      rows.push_back(make_row("newton.n1_tracefree", params, 0.0, 0.0, tfree.result(),
                              opt.tol_for("newton.n1_tracefree", 1e-9)));
    }
    rows.push_back(make_row("newton.classic", params, 0.0, 0.0, classic.result(),
                            opt.tol_for("newton.classic", 1e-9)));
    rows.push_back(
        make_row("newton.gnf", params, 0.0, 0.0, gnf.result(), opt.tol_for("newton.gnf", 1e-9)));

    // (2k-2,k)-Einstein corollary: space forms satisfy the proportionality,
    // generic contexts report not-applicable.
    {
      double worst = 0.0;
      const CurvatureContext sf = curvinv::space_form_context(n, 1.0);
      bool any = false;
      for (int k = 1; 2 * k + 2 <= n; ++k) {
        const auto res = curvinv::pq_einstein_h_residual(sf, k);
        if (res) {
          any = true;
          worst = std::max(worst, *res);
        } else {
          worst = 1.0;  // space forms must satisfy the precondition
        }
      }
      if (any) {
        rows.push_back(make_row("newton.pq_einstein", params, 0.0, 0.0, worst,
                                opt.tol_for("newton.pq_einstein", 1e-9)));
        const CurvatureContext generic = curvinv::random_curvature(n, 4, opt.seed + 17);
        const auto res = curvinv::pq_einstein_h_residual(generic, 1);
        if (res.has_value()) {
          rows.push_back(make_row("newton.pq_einstein", {{"n", n}, {"input", "generic"}}, 0.0, 0.0,
                                  1.0, opt.tol_for("newton.pq_einstein", 1e-9)));
        } else {
          rows.push_back(not_applicable_row("newton.pq_einstein", {{"n", n}, {"input", "generic"}},
                                            0.0, 0.0, 0.0));
        }
      }
    }
  }
  return rows;
}

}  // namespace gbcurv::verify
