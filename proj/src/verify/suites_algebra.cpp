#include <algorithm>
#include <cmath>
#include <functional>

#include "gbcurv/common.hpp"
#include "gbcurv/dfalg/double_form.hpp"
#include "gbcurv/dfalg/subset_tables.hpp"
#include "gbcurv/linalg.hpp"
#include "gbcurv/parallel.hpp"
#include "gbcurv/rng.hpp"
#include "gbcurv/verify/suites.hpp"

namespace gbcurv::verify {

using dfalg::DoubleForm;

namespace {

DoubleForm random_form(Rng& rng, int n, int p, int q) {
  DoubleForm w(n, p, q);
  for (int i = 0; i < w.rows(); ++i)
    for (int j = 0; j < w.cols(); ++j) w.at(i, j) = rng.gaussian();
  return w;
}

linalg::Mat random_symmetric(Rng& rng, int n) {
  linalg::Mat h(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) h(i, j) = h(j, i) = rng.gaussian();
  return h;
}

double max_over_trials(const Options& opt, int trials, const std::function<double(Rng&)>& body,
                       std::uint64_t salt) {
  std::vector<double> res(static_cast<std::size_t>(trials), 0.0);
  parallel_for(static_cast<std::size_t>(trials), opt.jobs, [&](std::size_t t) {
    Rng rng(opt.seed * 0x1000193u + salt * 0x10001u + t);
    res[t] = body(rng);
  });
  double worst = 0.0;
  for (double r : res) worst = std::max(worst, r);
  return worst;
}

}  // namespace

std::vector<Row> algebra_suite(const Options& opt) {
  std::vector<Row> rows;
  const int n_lo = std::max(2, opt.n_lo);
  const int n_hi = std::min(8, std::max(n_lo, opt.n_hi));
  // Negative control: the corrupted star flips one entry, which breaks the
  // involution and conjugation identities by O(1).
  auto star = [corrupt = opt.corrupt_star](const DoubleForm& w) {
    DoubleForm s = dfalg::hodge_star(w);
    if (corrupt) s.at(0, 0) = -s.at(0, 0);
    return s;
  };

  for (int n = n_lo; n <= n_hi; ++n) {
    nlohmann::json params{{"n", n}, {"trials", opt.trials}, {"seed", opt.seed}};

    const double adjoint = max_over_trials(opt, opt.trials, [n](Rng& rng) {
      double worst = 0.0;
      for (int p = 0; p + 1 <= n; ++p)
        for (int q = 0; q + 1 <= n; ++q)
          for (int r = 1; r <= 2 && p + r <= n && q + r <= n; ++r) {
            const DoubleForm w = random_form(rng, n, p, q);
            const DoubleForm e = random_form(rng, n, p + r, q + r);
            const DoubleForm gw = dfalg::exterior_product(DoubleForm::metric_power(n, r), w);
            worst = std::max(worst, rel_residual(dfalg::inner_product(gw, e),
                                                 dfalg::inner_product(w, dfalg::contract(e, r))));
          }
      return worst;
    }, 11);
    rows.push_back(make_row("alg.adjoint", params, 0.0, 0.0, adjoint, opt.tol_for("alg.adjoint", 1e-12)));

    const double invol = max_over_trials(opt, opt.trials, [n, &star](Rng& rng) {
      double worst = 0.0;
      for (int p = 0; p <= n; ++p) {
        const DoubleForm w = random_form(rng, n, p, p);
        worst = std::max(worst, dfalg::rel_residual(star(star(w)), w));
      }
      return worst;
    }, 13);
    rows.push_back(make_row("alg.star_involution", params, 0.0, 0.0, invol,
                            opt.tol_for("alg.star_involution", 1e-13)));

    // The conjugation identities hold for the factor-wise star whenever the
    // bidegrees have equal parity; every curvature-side use is (p,p).
    const double conj = max_over_trials(opt, opt.trials, [n, &star](Rng& rng) {
      double worst = 0.0;
      for (int p = 0; p <= n; ++p)
        for (int q = p - 2; q <= std::min(n, p + 2); q += 2)
          for (int r = 1; r <= 2; ++r) {
            if (q < 0 || p + r > n || q + r > n) continue;
            const DoubleForm w = random_form(rng, n, p, q);
            const DoubleForm gw = dfalg::exterior_product(DoubleForm::metric_power(n, r), w);
            worst = std::max(worst, dfalg::rel_residual(star(dfalg::contract(star(w), r)), gw));
            const DoubleForm e = random_form(rng, n, p + r, q + r);
            const DoubleForm ge = dfalg::exterior_product(DoubleForm::metric_power(n, r), star(e));
            worst = std::max(worst, dfalg::rel_residual(star(ge), dfalg::contract(e, r)));
          }
      return worst;
    }, 17);
    rows.push_back(make_row("alg.star_conjugation", params, 0.0, 0.0, conj,
                            opt.tol_for("alg.star_conjugation", 1e-12)));

    if (n <= 6) {
      const double det = max_over_trials(opt, opt.trials, [n](Rng& rng) {
        const linalg::Mat h = random_symmetric(rng, n);
        const DoubleForm hform = DoubleForm::from_matrix(h);
        double worst = 0.0;
        for (int k = 1; k <= std::min(3, n); ++k) {
          const DoubleForm hk = dfalg::power(hform, k);
          const auto& subs = dfalg::SubsetTable::get(n, k);
          for (int i = 0; i < subs.count(); ++i)
            for (int j = 0; j < subs.count(); ++j) {
              // k! det of the (I,J) minor, by Laplace expansion over
              // permutations (k <= 3 keeps this exact and independent).
              int iv[3], jv[3];
              std::uint32_t mi = subs.mask(i), mj = subs.mask(j);
              for (int t = 0; t < k; ++t) {
                iv[t] = __builtin_ctz(mi);
                mi &= mi - 1;
                jv[t] = __builtin_ctz(mj);
                mj &= mj - 1;
              }
              double detm = 0.0;
              int perm[3] = {0, 1, 2};
              do {
                double prod = 1.0;
                int inversions = 0;
                for (int a = 0; a < k; ++a) {
                  prod *= h(iv[a], jv[perm[a]]);
                  for (int b = a + 1; b < k; ++b) inversions += perm[a] > perm[b];
                }
                detm += (inversions % 2 ? -1.0 : 1.0) * prod;
              } while (std::next_permutation(perm, perm + k));
              worst = std::max(worst, rel_residual(hk.at(i, j), factorial(k) * detm));
            }
        }
        return worst;
      }, 19);
      rows.push_back(make_row("alg.determinant_law", params, 0.0, 0.0, det,
                              opt.tol_for("alg.determinant_law", 1e-12)));
    }

    double metric_contraction = 0.0;
    for (int m = 0; m <= n; ++m)
      for (int r = 0; r <= m; ++r) {
        const DoubleForm lhs = dfalg::contract(DoubleForm::metric_power(n, m), r);
        const double coef = static_cast<double>(factorial(m)) / factorial(m - r) *
                            factorial(n - m + r) / factorial(n - m);
        metric_contraction = std::max(
            metric_contraction, dfalg::rel_residual(lhs, DoubleForm::metric_power(n, m - r) * coef));
      }
    rows.push_back(make_row("alg.metric_contraction", params, 0.0, 0.0, metric_contraction,
                            opt.tol_for("alg.metric_contraction", 1e-12)));

    const double assoc = max_over_trials(opt, opt.trials, [n](Rng& rng) {
      double worst = 0.0;
      const int caps[][6] = {{1, 1, 1, 1, 1, 1}, {2, 2, 1, 1, 1, 0}, {1, 0, 1, 2, 1, 1}};
      for (const auto& c : caps) {
        if (c[0] + c[2] + c[4] > n || c[1] + c[3] + c[5] > n) continue;
        const DoubleForm a = random_form(rng, n, c[0], c[1]);
        const DoubleForm b = random_form(rng, n, c[2], c[3]);
        const DoubleForm cc = random_form(rng, n, c[4], c[5]);
        const DoubleForm left = dfalg::exterior_product(dfalg::exterior_product(a, b), cc);
        const DoubleForm right = dfalg::exterior_product(a, dfalg::exterior_product(b, cc));
        worst = std::max(worst, dfalg::rel_residual(left, right));
        // bilinearity spot check
        const DoubleForm lin =
            dfalg::exterior_product(a * 2.0 + a, b) - dfalg::exterior_product(a, b) * 3.0;
        worst = std::max(worst, dfalg::max_abs(lin) / std::max(1.0, dfalg::max_abs(a)));
      }
      return worst;
    }, 23);
    rows.push_back(make_row("alg.associativity", params, 0.0, 0.0, assoc,
                            opt.tol_for("alg.associativity", 1e-12)));

    const double comm = max_over_trials(opt, opt.trials, [n](Rng& rng) {
      double worst = 0.0;
      const int degs[][4] = {{1, 1, 1, 1}, {1, 2, 2, 1}, {2, 2, 1, 1}, {1, 0, 0, 1}};
      for (const auto& d : degs) {
        if (d[0] + d[2] > n || d[1] + d[3] > n) continue;
        const DoubleForm a = random_form(rng, n, d[0], d[1]);
        const DoubleForm b = random_form(rng, n, d[2], d[3]);
        const double sgn = ((d[0] * d[2] + d[1] * d[3]) % 2 == 0) ? 1.0 : -1.0;
        worst = std::max(worst, dfalg::rel_residual(dfalg::exterior_product(a, b),
                                                    dfalg::exterior_product(b, a) * sgn));
      }
      return worst;
    }, 29);
    rows.push_back(make_row("alg.graded_commutativity", params, 0.0, 0.0, comm,
                            opt.tol_for("alg.graded_commutativity", 1e-12)));

    const double bianchi = max_over_trials(opt, opt.trials, [n](Rng& rng) {
      const DoubleForm h = DoubleForm::from_matrix(random_symmetric(rng, n));
      return dfalg::first_bianchi_residual(dfalg::power(h, 2)) /
             std::max(1.0, dfalg::max_abs(dfalg::power(h, 2)));
    }, 31);
    rows.push_back(make_row("alg.gauss_bianchi", params, 0.0, 0.0, bianchi,
                            opt.tol_for("alg.gauss_bianchi", 1e-12)));
  }
  return rows;
}

}  // namespace gbcurv::verify
