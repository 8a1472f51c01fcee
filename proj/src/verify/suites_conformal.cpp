#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "gbcurv/chart/operators.hpp"
#include "gbcurv/chart/quadrature.hpp"
#include "gbcurv/common.hpp"
#include "gbcurv/curvinv/invariants.hpp"
#include "gbcurv/models/models.hpp"
#include "gbcurv/parallel.hpp"
#include "gbcurv/rng.hpp"
#include "gbcurv/verify/suites.hpp"

namespace gbcurv::verify {

using chart::ChartMetric;
using chart::PointContext;
using chart::ScalarField;
using dfalg::DoubleForm;

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

chart::FdConfig fd_of(const Options& opt) {
  chart::FdConfig fd;
  fd.order = opt.fd_order;
  fd.step = opt.fd_step;
  return fd;
}

std::vector<std::vector<double>> torus_samples(int n, double side, int count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::vector<double>> pts;
  for (int s = 0; s < count; ++s) {
    std::vector<double> x(static_cast<std::size_t>(n));
    for (double& c : x) c = rng.uniform(0.0, side);
    pts.push_back(std::move(x));
  }
  return pts;
}

// A mildly curved periodic metric on T^n varying along the first two axes.
ChartMetric bumpy_torus(int n, chart::FdConfig fd) {
  chart::Domain dom;
  dom.lo.assign(static_cast<std::size_t>(n), 0.0);
  dom.hi.assign(static_cast<std::size_t>(n), kTwoPi);
  dom.periodic.assign(static_cast<std::size_t>(n), 1);
  std::vector<ScalarField> entries(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) {
        const double phase = 0.7 * i;
        entries[static_cast<std::size_t>(i) * n + j] =
            ScalarField::from_function([phase](std::span<const double> x) {
              return 1.0 + 0.15 * std::sin(x[0] + phase) * std::cos(x[1]);
            });
      } else if ((i == 0 && j == 1) || (i == 1 && j == 0)) {
        entries[static_cast<std::size_t>(i) * n + j] =
            ScalarField::from_function([](std::span<const double> x) {
              return 0.05 * std::sin(x[0]) * std::sin(x[1]);
            });
      } else {
        entries[static_cast<std::size_t>(i) * n + j] = ScalarField::constant(0.0);
      }
    }
  return ChartMetric(std::move(dom), std::move(entries), fd);
}

double max_over_points(const Options& opt, const std::vector<std::vector<double>>& pts,
                       const std::function<double(std::span<const double>)>& body) {
  std::vector<double> res(pts.size(), 0.0);
  parallel_for(pts.size(), opt.jobs, [&](std::size_t i) { res[i] = body(pts[i]); });
  double worst = 0.0;
  for (double r : res) worst = std::max(worst, r);
  return worst;
}

}  // namespace

std::vector<Row> conformal_pointwise_suite(const Options& opt) {
  std::vector<Row> rows;
  const chart::FdConfig fd = fd_of(opt);
  const int samples = std::max(1, opt.samples);

  // Flat chart: zero curvature to machine precision.
  {
    const models::ModelManifold torus = models::flat_torus(4, kTwoPi);
    const ChartMetric m = torus.make_chart(fd);
    const auto pts = torus_samples(4, kTwoPi, std::min(samples, 5), opt.seed + 1);
    const double res = max_over_points(opt, pts, [&m](std::span<const double> x) {
      return dfalg::max_abs(chart::curvature_at(m, x).curvature);
    });
    rows.push_back(make_row("chart.flat", {{"n", 4}}, 0.0, 0.0, res, opt.tol_for("chart.flat", 1e-12)));
  }

  // Stereographic round sphere against the closed form (kappa/2) g^2, plus
  // frame orthonormality and the step-halving convergence ratio.
  {
    const models::ModelManifold sphere = models::space_form(4, 1.0);
    const ChartMetric m = sphere.make_chart(fd);
    const DoubleForm expect = DoubleForm::metric_power(4, 2) * 0.5;
    const double res = max_over_points(opt, sphere.sample_points, [&](std::span<const double> x) {
      return dfalg::max_abs_diff(chart::curvature_at(m, x).curvature, expect);
    });
    rows.push_back(
        make_row("chart.sphere", {{"n", 4}, {"fd_order", fd.order}}, 0.0, 0.0, res,
                 opt.tol_for("chart.sphere", fd.order == 4 ? 1e-6 : 1e-4)));

    const double frame_res = max_over_points(opt, sphere.sample_points, [&](std::span<const double> x) {
      const chart::PointFrame pf = chart::curvature_at(m, x);
      const linalg::Mat gram = linalg::matmul(linalg::transpose(pf.frame), linalg::matmul(pf.g, pf.frame));
      return linalg::max_abs(gram - linalg::Mat::identity(4));
    });
    rows.push_back(make_row("chart.frame", {{"n", 4}}, 0.0, 0.0, frame_res,
                            opt.tol_for("chart.frame", 1e-10)));

    double ratio_score = 0.0;
    nlohmann::json ratios = nlohmann::json::array();
    for (int order : {2, 4}) {
      auto err_at = [&](double step) {
        chart::FdConfig cfg;
        cfg.order = order;
        cfg.step.assign(4, step);
        const ChartMetric mm = sphere.make_chart(cfg);
        double worst = 0.0;
        for (const auto& x : sphere.sample_points)
          worst = std::max(worst, dfalg::max_abs_diff(chart::curvature_at(mm, x).curvature, expect));
        return worst;
      };
      const double coarse = err_at(0.08), fine = err_at(0.04);
      const double ratio = coarse / fine;
      ratios.push_back({{"order", order}, {"ratio", ratio}});
      const double lo = order == 2 ? 3.0 : 12.0, hi = order == 2 ? 5.0 : 20.0;
      if (!(ratio >= lo && ratio <= hi)) ratio_score += 1.0;
    }
    rows.push_back(make_row("chart.convergence", {{"n", 4}, {"ratios", ratios}}, 0.0, 0.0,
                            ratio_score, opt.tol_for("chart.convergence", 0.5)));
  }

  // Conformal h_4 law, both sides independent, flat and bumpy T^4 and the
  // round S^5 chart with a polynomial conformal factor.
  {
    const ScalarField f = ScalarField::from_expression("0.1*sin(x1)*cos(x2)");
    const models::ModelManifold torus = models::flat_torus(4, kTwoPi);
    const ChartMetric flat = torus.make_chart(fd);
    const auto pts = torus_samples(4, kTwoPi, samples, opt.seed + 2);
    double worst = 0.0, vol = 0.0, weyl = 0.0, riem = 0.0;
    {
      std::vector<chart::ConformalH4Result> res(pts.size());
      parallel_for(pts.size(), opt.jobs,
                   [&](std::size_t i) { res[i] = chart::conformal_h4_check(flat, f, pts[i]); });
      for (const auto& r : res) {
        worst = std::max(worst, r.residual);
        vol = std::max(vol, r.volume_residual);
        weyl = std::max(weyl, r.weyl_residual);
        riem = std::max(riem, r.riemann_residual);
      }
    }
    const ChartMetric bumpy = bumpy_torus(4, fd);
    {
      std::vector<chart::ConformalH4Result> res(pts.size());
      parallel_for(pts.size(), opt.jobs,
                   [&](std::size_t i) { res[i] = chart::conformal_h4_check(bumpy, f, pts[i]); });
      for (const auto& r : res) {
        worst = std::max(worst, r.residual);
        vol = std::max(vol, r.volume_residual);
        weyl = std::max(weyl, r.weyl_residual);
        riem = std::max(riem, r.riemann_residual);
      }
    }
    {
      const models::ModelManifold s5 = models::space_form(5, 1.0);
      const ChartMetric sphere = s5.make_chart(fd);
      const ScalarField poly = ScalarField::from_expression("0.05*x1 + 0.1*x2^2 - 0.04*x3*x4");
      std::vector<chart::ConformalH4Result> res(s5.sample_points.size());
      parallel_for(s5.sample_points.size(), opt.jobs, [&](std::size_t i) {
        res[i] = chart::conformal_h4_check(sphere, poly, s5.sample_points[i]);
      });
      for (const auto& r : res) {
        worst = std::max(worst, r.residual);
        vol = std::max(vol, r.volume_residual);
        weyl = std::max(weyl, r.weyl_residual);
        riem = std::max(riem, r.riemann_residual);
      }
    }
    // Constant conformal factor: the operator vanishes and the law is exact
    // scaling.
    {
      const ScalarField c = ScalarField::constant(0.3);
      const auto r = chart::conformal_h4_check(flat, c, pts.front());
      worst = std::max(worst, r.residual);
      const double lg = chart::scr_l_operator(flat, c, pts.front());
      worst = std::max(worst, std::abs(lg));
    }
    nlohmann::json params{{"samples", samples}, {"fd_order", fd.order}};
    rows.push_back(make_row("conf.h4_law", params, 0.0, 0.0, worst, opt.tol_for("conf.h4_law", 1e-4)));
    rows.push_back(make_row("conf.volume", params, 0.0, 0.0, vol, opt.tol_for("conf.volume", 1e-10)));
    rows.push_back(make_row("conf.weyl", params, 0.0, 0.0, weyl, opt.tol_for("conf.weyl", 1e-5)));
    rows.push_back(make_row("conf.riemann", params, 0.0, 0.0, riem, opt.tol_for("conf.riemann", 1e-5)));
  }

  // Cocycle rule: exact-zero clauses then trig data.
  {
    const ChartMetric bumpy = bumpy_torus(4, fd);
    const ScalarField f = ScalarField::from_expression("0.1*sin(x1)*cos(x2)");
    const ScalarField phi = ScalarField::from_expression("0.08*cos(x1)*sin(x2)");
    const ScalarField zero = ScalarField::constant(0.0);
    const auto pts = torus_samples(4, kTwoPi, std::max(3, samples / 4), opt.seed + 3);
    const double exact1 = max_over_points(opt, pts, [&](std::span<const double> x) {
      return chart::cocycle_residual(bumpy, f, zero, x);
    });
    const double exact2 = max_over_points(opt, pts, [&](std::span<const double> x) {
      return chart::cocycle_residual(bumpy, zero, phi, x);
    });
    rows.push_back(make_row("conf.cocycle", {{"clause", "phi=0 and f=0"}}, 0.0, 0.0,
                            std::max(exact1, exact2), opt.tol_for("conf.cocycle.trivial", 1e-14)));
    const double trig = max_over_points(opt, pts, [&](std::span<const double> x) {
      return chart::cocycle_residual(bumpy, f, phi, x);
    });
    rows.push_back(make_row("conf.cocycle", {{"clause", "trig"}, {"fd_order", fd.order}}, 0.0, 0.0,
                            trig, opt.tol_for("conf.cocycle", 1e-3)));
  }

  // Dimension > 4 power-law operators on T^5 and the S^5 chart.
  {
    const models::ModelManifold torus5 = models::flat_torus(5, kTwoPi);
    const ChartMetric flat5 = torus5.make_chart(fd);
    const ScalarField v = ScalarField::from_expression("1.2 + 0.1*sin(x1)");
    const auto pts = torus_samples(5, kTwoPi, samples, opt.seed + 4);
    double worst = max_over_points(opt, pts, [&](std::span<const double> x) {
      return chart::conformal_power_ops(flat5, v, x).residual;
    });
    {
      const models::ModelManifold s5 = models::space_form(5, 1.0);
      const ChartMetric sphere = s5.make_chart(fd);
      const ScalarField vpoly = ScalarField::from_expression("1 + 0.1*x1 + 0.05*x2^2");
      for (const auto& x : s5.sample_points)
        worst = std::max(worst, chart::conformal_power_ops(sphere, vpoly, x).residual);
      // v = 1: L vanishes, K reduces to its zeroth-order coefficient, and
      // h_4 is untouched.
      const ScalarField one = ScalarField::constant(1.0);
      const auto r = chart::conformal_power_ops(sphere, one, s5.sample_points.front());
      worst = std::max(worst, std::abs(r.l_value));
      const PointContext pc(sphere, s5.sample_points.front());
      worst = std::max(worst, rel_residual(r.k_value, (5.0 - 4.0) / (8.0 * 2.0) * pc.h4()));
    }
    rows.push_back(make_row("conf.k_law", {{"n", 5}, {"fd_order", fd.order}}, 0.0, 0.0, worst,
                            opt.tol_for("conf.k_law", 1e-4)));
  }

  // Bi-degree conformal covariance of K.
  {
    const ChartMetric bumpy5 = bumpy_torus(5, fd);
    const ScalarField phi = ScalarField::from_expression("1.1 + 0.1*cos(x1)");
    const auto pts = torus_samples(5, kTwoPi, std::max(3, samples / 4), opt.seed + 5);
    const ScalarField one = ScalarField::constant(1.0);
    const double exact = max_over_points(opt, pts, [&](std::span<const double> x) {
      return chart::bidegree_covariance_residual(bumpy5, one, phi, x);
    });
    rows.push_back(make_row("conf.bidegree", {{"clause", "a=1"}}, 0.0, 0.0, exact,
                            opt.tol_for("conf.bidegree.trivial", 1e-15)));
    const ScalarField lambda = ScalarField::constant(1.3);
    const ChartMetric flat5b = models::flat_torus(5, kTwoPi).make_chart(fd);
    const double homothety = max_over_points(opt, pts, [&](std::span<const double> x) {
      return chart::bidegree_covariance_residual(flat5b, lambda, phi, x);
    });
    rows.push_back(make_row("conf.bidegree", {{"clause", "a const"}}, 0.0, 0.0, homothety,
                            opt.tol_for("conf.bidegree.homothety", 1e-10)));
    const ScalarField a = ScalarField::from_expression("1 + 0.05*sin(x1)*cos(x2)");
    const double trig = max_over_points(opt, pts, [&](std::span<const double> x) {
      return chart::bidegree_covariance_residual(bumpy5, a, phi, x);
    });
    rows.push_back(make_row("conf.bidegree", {{"clause", "trig"}, {"fd_order", fd.order}}, 0.0, 0.0,
                            trig, opt.tol_for("conf.bidegree", 1e-3)));
  }

  // T_2 definiteness diagnostic at sample points (reported, never asserted).
  {
    const models::ModelManifold s5 = models::space_form(5, 1.0);
    const ChartMetric sphere = s5.make_chart(fd);
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& x : s5.sample_points) {
      const PointContext pc(sphere, x);
      const auto eig = linalg::jacobi_eigenvalues(dfalg::to_matrix(pc.einstein_tensor()));
      lo = std::min(lo, eig.front());
      hi = std::max(hi, eig.back());
    }
    rows.push_back(not_applicable_row("conf.t2_definiteness", {{"chart", "S^5(1)"}}, lo, hi, 0.0));
  }

  return rows;
}

}  // namespace gbcurv::verify
