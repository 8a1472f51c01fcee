#include <cmath>

#include "gbcurv/chart/chart_metric.hpp"
#include "gbcurv/models/models.hpp"
#include "gbcurv/verify/integral_rows.hpp"
#include "gbcurv/verify/suites.hpp"

namespace gbcurv::verify {

using chart::ChartMetric;
using chart::ScalarField;

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::vector<int> plane_resolution(int n, int active, int n1, int rest) {
  std::vector<int> res(static_cast<std::size_t>(n), rest);
  for (int a = 0; a < active; ++a) res[static_cast<std::size_t>(a)] = n1;
  return res;
}

ChartMetric bumpy_torus4(chart::FdConfig fd) {
  chart::Domain dom;
  dom.lo.assign(4, 0.0);
  dom.hi.assign(4, kTwoPi);
  dom.periodic.assign(4, 1);
  std::vector<ScalarField> entries(16);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (i == j) {
        const double phase = 0.7 * i;
        entries[static_cast<std::size_t>(i) * 4 + j] =
            ScalarField::from_function([phase](std::span<const double> x) {
              return 1.0 + 0.12 * std::sin(x[0] + phase) * std::cos(x[1]);
            });
      } else if (i + j == 1) {
        entries[static_cast<std::size_t>(i) * 4 + j] = ScalarField::from_function(
            [](std::span<const double> x) { return 0.04 * std::sin(x[0]) * std::sin(x[1]); });
      } else {
        entries[static_cast<std::size_t>(i) * 4 + j] = ScalarField::constant(0.0);
      }
    }
  return ChartMetric(std::move(dom), std::move(entries), fd);
}

}  // namespace

std::vector<Row> conformal_integral_suite(const Options& opt) {
  chart::FdConfig fd;
  fd.order = opt.fd_order;
  fd.step = opt.fd_step;
  if (fd.step.empty()) {
    chart::Domain box;
    box.lo.assign(1, 0.0);
    box.hi.assign(1, kTwoPi);
    box.periodic.assign(1, 1);
    fd.step = integral_default_steps(box);
  }
  std::vector<Row> rows;
  const ScalarField f = ScalarField::from_expression("sin(x1)*sin(x2)");

  {
    const ChartMetric flat = models::flat_torus(4, kTwoPi).make_chart(fd);
    const auto res = plane_resolution(4, 2, opt.resolution > 0 ? opt.resolution : 16, 2);
    auto flat_rows = dim4_integral_rows(
        flat, f, res, opt.tol_for("int.flat", 1e-6), opt.jobs,
        {{"chart", "T^4 flat"}, {"f", "sin(x1)*sin(x2)"}, {"resolution", res}, {"fd_order", fd.order}});
    rows.insert(rows.end(), flat_rows.begin(), flat_rows.end());
  }
  {
    const ChartMetric bumpy = bumpy_torus4(fd);
    const auto res = plane_resolution(4, 2, opt.resolution > 0 ? opt.resolution : 24, 2);
    auto bumpy_rows = dim4_integral_rows(
        bumpy, f, res, opt.tol_for("int.bumpy", 2e-5), opt.jobs,
        {{"chart", "T^4 bumpy"}, {"f", "sin(x1)*sin(x2)"}, {"resolution", res}, {"fd_order", fd.order}});
    rows.insert(rows.end(), bumpy_rows.begin(), bumpy_rows.end());
  }
  {
    const ChartMetric flat5 = models::flat_torus(5, kTwoPi).make_chart(fd);
    const ScalarField v = ScalarField::from_expression("1.5 + 0.3*cos(x1)");
    const auto res = plane_resolution(5, 1, opt.resolution > 0 ? opt.resolution : 24, 2);
    auto rows5 = dim5_integral_rows(
        flat5, v, res, opt.tol_for("int.dim5", 1e-5), opt.jobs,
        {{"chart", "T^5 flat"}, {"v", "1.5 + 0.3*cos(x1)"}, {"resolution", res}, {"fd_order", fd.order}});
    rows.insert(rows.end(), rows5.begin(), rows5.end());
  }
  return rows;
}

}  // namespace gbcurv::verify
