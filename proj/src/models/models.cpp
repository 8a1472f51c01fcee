#include "gbcurv/models/models.hpp"

#include <algorithm>
#include <cmath>

#include "gbcurv/common.hpp"
#include "gbcurv/curvinv/invariants.hpp"
#include "gbcurv/rng.hpp"

namespace gbcurv::models {

namespace {

std::vector<std::vector<double>> draw_samples(int n, double radius, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::vector<double>> pts;
  for (int s = 0; s < 5; ++s) {
    std::vector<double> x(static_cast<std::size_t>(n));
    for (double& c : x) c = rng.uniform(-radius, radius);
    pts.push_back(std::move(x));
  }
  return pts;
}

}  // namespace

ModelManifold space_form(int n, double kappa) {
  if (n < 2) throw ConfigError("space form needs n >= 2");
  ModelManifold m;
  m.name = "space_form(n=" + std::to_string(n) + ",kappa=" + std::to_string(kappa) + ")";
  m.n = n;
  m.scal = n * (n - 1) * kappa;
  for (int k = 0; 2 * k <= n; ++k)
    m.h[k] = std::pow(kappa, k) * static_cast<double>(factorial(n)) /
             (std::pow(2.0, k) * static_cast<double>(factorial(n - 2 * k)));
  if (n >= 3)
    for (int k = 0; k <= n; ++k)
      m.sigma[k] = static_cast<double>(binomial(n, k)) * std::pow(kappa / 2.0, k);
  m.ricci_eigs.assign(static_cast<std::size_t>(n), (n - 1) * kappa);
  m.einstein_eigs.assign(static_cast<std::size_t>(n), m.h.at(1) - (n - 1) * kappa);
  if (kappa > 0.0) {
    // Volume of the round sphere of curvature kappa.
    m.volume = 2.0 * std::pow(3.141592653589793238462643383279502884, (n + 1) / 2.0) /
               std::tgamma((n + 1) / 2.0) * std::pow(kappa, -n / 2.0);
  }

  // The chart domain and sampling radius shrink with sqrt(kappa) so stencils
  // stay in the well-conditioned part of the chart. For kappa < 0 the box
  // must also clear the 1 + kappa |x|^2 = 0 locus at its corners.
  const double scale = 1.0 / std::sqrt(std::max(1.0, std::abs(kappa)));
  const double box = (kappa < 0.0) ? 0.8 / std::sqrt(n * std::abs(kappa)) : 0.8 * scale;
  m.make_chart = [n, kappa, box](chart::FdConfig fd) {
    chart::Domain dom;
    dom.lo.assign(static_cast<std::size_t>(n), -box);
    dom.hi.assign(static_cast<std::size_t>(n), box);
    dom.periodic.assign(static_cast<std::size_t>(n), 0);
    std::vector<chart::ScalarField> entries(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) {
          entries[static_cast<std::size_t>(i) * n + j] =
              chart::ScalarField::from_function([kappa](std::span<const double> x) {
                double r2 = 0.0;
                for (double c : x) r2 += c * c;
                const double den = 1.0 + kappa * r2;
                return 4.0 / (den * den);
              });
        } else {
          entries[static_cast<std::size_t>(i) * n + j] = chart::ScalarField::constant(0.0);
        }
      }
    return chart::ChartMetric(std::move(dom), std::move(entries), fd);
  };
  m.make_context = [n, kappa] { return curvinv::space_form_context(n, kappa); };
  m.sample_points = draw_samples(n, 0.3 * box, 0xabcd01u + static_cast<std::uint64_t>(n));
  return m;
}

ModelManifold flat_torus(int n, double side) {
  if (n < 1) throw ConfigError("torus needs n >= 1");
  if (!(side > 0.0)) throw ConfigError("torus side must be positive");
  ModelManifold m;
  m.name = "flat_torus(n=" + std::to_string(n) + ",side=" + std::to_string(side) + ")";
  m.n = n;
  m.scal = 0.0;
  for (int k = 0; 2 * k <= n; ++k) m.h[k] = (k == 0) ? 1.0 : 0.0;
  if (n >= 3)
    for (int k = 0; k <= n; ++k) m.sigma[k] = (k == 0) ? 1.0 : 0.0;
  m.ricci_eigs.assign(static_cast<std::size_t>(n), 0.0);
  m.einstein_eigs.assign(static_cast<std::size_t>(n), 0.0);
  m.volume = std::pow(side, n);
  m.make_chart = [n, side](chart::FdConfig fd) {
    chart::Domain dom;
    dom.lo.assign(static_cast<std::size_t>(n), 0.0);
    dom.hi.assign(static_cast<std::size_t>(n), side);
    dom.periodic.assign(static_cast<std::size_t>(n), 1);
    return chart::ChartMetric::euclidean(std::move(dom), fd);
  };
  m.make_context = [n] {
    if (n < 2) throw DimensionError("flat torus curvature context needs n >= 2");
    return curvinv::CurvatureContext(dfalg::DoubleForm(n, 2, 2));
  };
  m.sample_points = draw_samples(n, 0.4 * side, 0xef0102u + static_cast<std::uint64_t>(n));
  for (auto& p : m.sample_points)
    for (double& c : p) c += 0.5 * side;
  return m;
}

ModelManifold product(const ModelManifold& m1, const ModelManifold& m2) {
  const int n1 = m1.n, n2 = m2.n, n = n1 + n2;
  if (n > kMaxDim) throw DimensionError("product dimension exceeds " + std::to_string(kMaxDim));
  ModelManifold m;
  m.name = m1.name + " x " + m2.name;
  m.n = n;
  m.scal = m1.scal + m2.scal;
  m.h[0] = 1.0;
  if (n >= 1) m.h[1] = 0.5 * m.scal;
  if (n >= 4) {
    const double h41 = (n1 >= 4) ? m1.h.at(2) : 0.0;
    const double h42 = (n2 >= 4) ? m2.h.at(2) : 0.0;
    m.h[2] = h41 + 0.5 * m1.scal * m2.scal + h42;
  }
  m.ricci_eigs = m1.ricci_eigs;
  m.ricci_eigs.insert(m.ricci_eigs.end(), m2.ricci_eigs.begin(), m2.ricci_eigs.end());
  const double h2 = m.h.at(1);
  for (double r : m.ricci_eigs) m.einstein_eigs.push_back(h2 - r);
  double ric2 = 0.0;
  for (double r : m.ricci_eigs) ric2 += r * r;
  if (n >= 3)
    m.sigma[2] = (n * m.scal * m.scal / (4.0 * (n - 1)) - ric2) / (2.0 * (n - 2) * (n - 2));
  m.volume = (m1.volume > 0.0 && m2.volume > 0.0) ? m1.volume * m2.volume : 0.0;

  auto chart1 = m1.make_chart, chart2 = m2.make_chart;
  m.make_chart = [n1, n2, n, chart1, chart2](chart::FdConfig fd) {
    chart::FdConfig fd1 = fd, fd2 = fd;
    if (!fd.step.empty()) {
      fd1.step.assign(fd.step.begin(), fd.step.begin() + std::min<std::size_t>(fd.step.size(),
                                                                               static_cast<std::size_t>(n1)));
      fd2.step = fd.step.size() > static_cast<std::size_t>(n1)
                     ? std::vector<double>(fd.step.begin() + n1, fd.step.end())
                     : fd.step;
    }
    const chart::ChartMetric c1 = chart1(fd1);
    const chart::ChartMetric c2 = chart2(fd2);
    chart::Domain dom;
    dom.lo = c1.domain().lo;
    dom.hi = c1.domain().hi;
    dom.periodic = c1.domain().periodic;
    dom.lo.insert(dom.lo.end(), c2.domain().lo.begin(), c2.domain().lo.end());
    dom.hi.insert(dom.hi.end(), c2.domain().hi.begin(), c2.domain().hi.end());
    dom.periodic.insert(dom.periodic.end(), c2.domain().periodic.begin(), c2.domain().periodic.end());
    std::vector<chart::ScalarField> entries(static_cast<std::size_t>(n) * n,
                                            chart::ScalarField::constant(0.0));
    for (int i = 0; i < n1; ++i)
      for (int j = 0; j < n1; ++j) {
        const chart::ScalarField e = c1.entry(i, j);
        entries[static_cast<std::size_t>(i) * n + j] = chart::ScalarField::from_function(
            [e, n1](std::span<const double> x) { return e(x.first(static_cast<std::size_t>(n1))); });
      }
    for (int i = 0; i < n2; ++i)
      for (int j = 0; j < n2; ++j) {
        const chart::ScalarField e = c2.entry(i, j);
        entries[static_cast<std::size_t>(n1 + i) * n + (n1 + j)] = chart::ScalarField::from_function(
            [e, n1](std::span<const double> x) { return e(x.subspan(static_cast<std::size_t>(n1))); });
      }
    chart::FdConfig fdp = fd;
    if (fd.step.empty()) {
      // Inherit each factor's default steps so curvature scales stay matched.
      fdp.step.resize(static_cast<std::size_t>(n));
      for (int a = 0; a < n1; ++a) fdp.step[static_cast<std::size_t>(a)] = c1.step(a);
      for (int a = 0; a < n2; ++a) fdp.step[static_cast<std::size_t>(n1 + a)] = c2.step(a);
    }
    return chart::ChartMetric(std::move(dom), std::move(entries), fdp);
  };

  auto ctx1 = m1.make_context, ctx2 = m2.make_context;
  m.make_context = [ctx1, ctx2] { return curvinv::product_curvature(ctx1(), ctx2()); };

  const std::size_t count = std::min(m1.sample_points.size(), m2.sample_points.size());
  for (std::size_t s = 0; s < count; ++s) {
    std::vector<double> p = m1.sample_points[s];
    p.insert(p.end(), m2.sample_points[s].begin(), m2.sample_points[s].end());
    m.sample_points.push_back(std::move(p));
  }
  return m;
}

}  // namespace gbcurv::models
