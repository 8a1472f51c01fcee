#include "gbcurv/chart/chart_metric.hpp"

#include <cmath>
#include <optional>
#include <string>

#include "gbcurv/common.hpp"
#include "gbcurv/dfalg/subset_tables.hpp"
#include "gbcurv/rng.hpp"

namespace gbcurv::chart {

namespace {

// eps^(1/6): the sweet spot for fourth-order second-derivative stencils.
constexpr double kStepFraction = 2.4607833005759251e-3;

std::vector<double> with_offset(std::span<const double> x, int axis, double delta, int axis2 = -1,
                                double delta2 = 0.0) {
  std::vector<double> p(x.begin(), x.end());
  p[static_cast<std::size_t>(axis)] += delta;
  if (axis2 >= 0) p[static_cast<std::size_t>(axis2)] += delta2;
  return p;
}

}  // namespace

bool Domain::fully_periodic() const {
  for (char p : periodic)
    if (!p) return false;
  return !periodic.empty();
}

double fd_partial(const ScalarField& f, std::span<const double> x, int axis, double h, int order) {
  if (order == 2) {
    return (f(with_offset(x, axis, h)) - f(with_offset(x, axis, -h))) / (2.0 * h);
  }
  return (-f(with_offset(x, axis, 2.0 * h)) + 8.0 * f(with_offset(x, axis, h)) -
          8.0 * f(with_offset(x, axis, -h)) + f(with_offset(x, axis, -2.0 * h))) /
         (12.0 * h);
}

double fd_second(const ScalarField& f, std::span<const double> x, int a, int b, double ha, double hb,
                 int order) {
  if (a == b) {
    if (order == 2) {
      return (f(with_offset(x, a, ha)) - 2.0 * f(x) + f(with_offset(x, a, -ha))) / (ha * ha);
    }
    return (-f(with_offset(x, a, 2.0 * ha)) + 16.0 * f(with_offset(x, a, ha)) - 30.0 * f(x) +
            16.0 * f(with_offset(x, a, -ha)) - f(with_offset(x, a, -2.0 * ha))) /
           (12.0 * ha * ha);
  }
  if (order == 2) {
    return (f(with_offset(x, a, ha, b, hb)) - f(with_offset(x, a, ha, b, -hb)) -
            f(with_offset(x, a, -ha, b, hb)) + f(with_offset(x, a, -ha, b, -hb))) /
           (4.0 * ha * hb);
  }
  // Tensor product of the fourth-order first-derivative stencil.
  static constexpr int kOff[4] = {-2, -1, 1, 2};
  static constexpr double kCoef[4] = {1.0 / 12.0, -8.0 / 12.0, 8.0 / 12.0, -1.0 / 12.0};
  double acc = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      acc += kCoef[i] * kCoef[j] * f(with_offset(x, a, kOff[i] * ha, b, kOff[j] * hb));
  return acc / (ha * hb);
}

ChartMetric::ChartMetric(Domain domain, std::vector<ScalarField> entries, FdConfig fd)
    : n_(domain.dim()), domain_(std::move(domain)), entries_(std::move(entries)), fd_(fd) {
  if (n_ < 1 || n_ > kMaxDim) throw ConfigError("chart dimension out of range");
  if (static_cast<int>(entries_.size()) != n_ * n_)
    throw ConfigError("metric needs " + std::to_string(n_ * n_) + " entries");
  if (static_cast<int>(domain_.hi.size()) != n_ || static_cast<int>(domain_.periodic.size()) != n_)
    throw ConfigError("domain arrays must match the chart dimension");
  if (fd_.order != 2 && fd_.order != 4) throw ConfigError("fd order must be 2 or 4");
  for (int a = 0; a < n_; ++a)
    if (!(domain_.size(a) > 0.0)) throw ConfigError("domain box must have positive extent");
  for (const ScalarField& e : entries_) {
    if (!e.valid()) throw ConfigError("metric entry is not a valid scalar field");
    if (e.max_coord() > n_)
      throw ConfigError("metric entry references coordinate x" + std::to_string(e.max_coord()) +
                        " beyond dimension " + std::to_string(n_));
  }

  steps_.resize(static_cast<std::size_t>(n_));
  for (int a = 0; a < n_; ++a) {
    const double h = fd_.step.empty() ? kStepFraction * domain_.size(a)
                                      : fd_.step[std::min<std::size_t>(fd_.step.size() - 1,
                                                                       static_cast<std::size_t>(a))];
    if (!(h > 1e-300)) throw ChartError("finite-difference step underflow");
    steps_[static_cast<std::size_t>(a)] = h;
  }

  // Periodic axes must wrap the metric entries to machine precision.
  Rng rng(0x9bc4a01u);
  for (int a = 0; a < n_; ++a) {
    if (!domain_.periodic[static_cast<std::size_t>(a)]) continue;
    for (int trial = 0; trial < 3; ++trial) {
      std::vector<double> x(static_cast<std::size_t>(n_));
      for (int b = 0; b < n_; ++b)
        x[static_cast<std::size_t>(b)] = rng.uniform(domain_.lo[static_cast<std::size_t>(b)],
                                                     domain_.hi[static_cast<std::size_t>(b)]);
      std::vector<double> y = x;
      x[static_cast<std::size_t>(a)] = domain_.lo[static_cast<std::size_t>(a)];
      y[static_cast<std::size_t>(a)] = domain_.hi[static_cast<std::size_t>(a)];
      for (int i = 0; i < n_; ++i)
        for (int j = i; j < n_; ++j) {
          const double va = entry(i, j)(x), vb = entry(i, j)(y);
          if (std::abs(va - vb) > 1e-10 * std::max(1.0, std::abs(va)))
            throw ChartError("metric entry is not periodic along axis " + std::to_string(a + 1));
        }
    }
  }
}

ChartMetric ChartMetric::euclidean(Domain domain, FdConfig fd) {
  const int n = domain.dim();
  std::vector<ScalarField> entries(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      entries[static_cast<std::size_t>(i) * n + j] = ScalarField::constant(i == j ? 1.0 : 0.0);
  return ChartMetric(std::move(domain), std::move(entries), fd);
}

linalg::Mat ChartMetric::metric_at(std::span<const double> x) const {
  linalg::Mat g(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = i; j < n_; ++j) g(i, j) = g(j, i) = entry(i, j)(x);
  return g;
}

double ChartMetric::sqrt_det_at(std::span<const double> x) const {
  return linalg::sqrt_det_spd(metric_at(x));
}

ChartMetric::Jet ChartMetric::metric_jet(std::span<const double> x) const {
  Jet jet;
  jet.g = metric_at(x);
  jet.d.assign(static_cast<std::size_t>(n_), linalg::Mat(n_));
  jet.dd.assign(static_cast<std::size_t>(n_),
                std::vector<linalg::Mat>(static_cast<std::size_t>(n_), linalg::Mat(n_)));
  for (int i = 0; i < n_; ++i)
    for (int j = i; j < n_; ++j) {
      const ScalarField& e = entry(i, j);
      for (int a = 0; a < n_; ++a) {
        const double da = fd_partial(e, x, a, step(a), fd_.order);
        jet.d[static_cast<std::size_t>(a)](i, j) = jet.d[static_cast<std::size_t>(a)](j, i) = da;
      }
      for (int a = 0; a < n_; ++a)
        for (int b = a; b < n_; ++b) {
          const double dab = fd_second(e, x, a, b, step(a), step(b), fd_.order);
          jet.dd[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)](i, j) = dab;
          jet.dd[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)](j, i) = dab;
          jet.dd[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)](i, j) = dab;
          jet.dd[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)](j, i) = dab;
        }
    }
  return jet;
}

ChartMetric ChartMetric::conformally_scaled(const ScalarField& factor) const {
  std::vector<ScalarField> scaled;
  scaled.reserve(entries_.size());
  for (const ScalarField& e : entries_) scaled.push_back(sf_mul(factor, e));
  return ChartMetric(domain_, std::move(scaled), fd_);
}

void ChartMetric::check_stencil_room(std::span<const double> x) const {
  for (int a = 0; a < n_; ++a) {
    if (domain_.periodic[static_cast<std::size_t>(a)]) continue;
    const double reach = 2.5 * step(a);
    if (x[static_cast<std::size_t>(a)] - reach < domain_.lo[static_cast<std::size_t>(a)] ||
        x[static_cast<std::size_t>(a)] + reach > domain_.hi[static_cast<std::size_t>(a)])
      throw ChartError("finite-difference stencil leaves the chart domain on axis " +
                       std::to_string(a + 1));
  }
}

PointFrame curvature_at(const ChartMetric& m, std::span<const double> x) {
  const int n = m.dim();
  m.check_stencil_room(x);
  const ChartMetric::Jet jet = m.metric_jet(x);
  const linalg::Mat ginv = linalg::inverse_spd(jet.g);
  const linalg::Mat chol = linalg::cholesky(jet.g);
  const linalg::Mat frame = linalg::transpose(linalg::inverse_lower(chol));

  // Christoffel symbols of the first kind, G1[m][j][k] = (d_j g_mk + d_k g_mj - d_m g_jk)/2.
  std::vector<double> g1(static_cast<std::size_t>(n) * n * n);
  auto g1at = [&](int mm, int j, int k) -> double& {
    return g1[(static_cast<std::size_t>(mm) * n + j) * n + k];
  };
  for (int mm = 0; mm < n; ++mm)
    for (int j = 0; j < n; ++j)
      for (int k = j; k < n; ++k) {
        const double v = 0.5 * (jet.d[static_cast<std::size_t>(j)](mm, k) +
                                jet.d[static_cast<std::size_t>(k)](mm, j) -
                                jet.d[static_cast<std::size_t>(mm)](j, k));
        g1at(mm, j, k) = v;
        g1at(mm, k, j) = v;
      }

  std::vector<double> g2(static_cast<std::size_t>(n) * n * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double acc = 0.0;
        for (int mm = 0; mm < n; ++mm) acc += ginv(i, mm) * g1at(mm, j, k);
        g2[(static_cast<std::size_t>(i) * n + j) * n + k] = acc;
      }

  // Covariant curvature, sign fixed so that spheres have positive sectional
  // curvature: R(a,b;c,d) = (dd_bc g_ad + dd_ad g_bc - dd_bd g_ac - dd_ac g_bd)/2
  //                        + g^{mp} (G1[m][b][c] G1[p][a][d] - G1[m][b][d] G1[p][a][c]).
  std::vector<double> r4(static_cast<std::size_t>(n) * n * n * n);
  auto r4at = [&](int a, int b, int c, int d) -> double& {
    return r4[((static_cast<std::size_t>(a) * n + b) * n + c) * n + d];
  };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          double v = 0.5 * (jet.dd[static_cast<std::size_t>(b)][static_cast<std::size_t>(c)](a, d) +
                            jet.dd[static_cast<std::size_t>(a)][static_cast<std::size_t>(d)](b, c) -
                            jet.dd[static_cast<std::size_t>(b)][static_cast<std::size_t>(d)](a, c) -
                            jet.dd[static_cast<std::size_t>(a)][static_cast<std::size_t>(c)](b, d));
          for (int mm = 0; mm < n; ++mm)
            for (int pp = 0; pp < n; ++pp)
              v += ginv(mm, pp) * (g1at(mm, b, c) * g1at(pp, a, d) - g1at(mm, b, d) * g1at(pp, a, c));
          r4at(a, b, c, d) = v;
        }

  // Push to the orthonormal frame, one index at a time.
  std::vector<double> t(r4.size());
  for (int pass = 0; pass < 4; ++pass) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          for (int d = 0; d < n; ++d) {
            double acc = 0.0;
            for (int s = 0; s < n; ++s)
              acc += r4[((static_cast<std::size_t>(s) * n + b) * n + c) * n + d] * frame(s, a);
            t[((static_cast<std::size_t>(b) * n + c) * n + d) * n + a] = acc;
          }
    std::swap(r4, t);
  }

  dfalg::DoubleForm r(n, 2, 2);
  const auto& pairs = dfalg::SubsetTable::get(n, 2);
  for (int i = 0; i < r.rows(); ++i) {
    const std::uint32_t mi = pairs.mask(i);
    const int a = __builtin_ctz(mi);
    const int b = __builtin_ctz(mi & (mi - 1));
    for (int j = 0; j < r.cols(); ++j) {
      const std::uint32_t mj = pairs.mask(j);
      const int c = __builtin_ctz(mj);
      const int d = __builtin_ctz(mj & (mj - 1));
      r.at(i, j) = r4at(a, b, c, d);
    }
  }
  r = (r + dfalg::block_transpose(r)) * 0.5;

  PointFrame pf{std::vector<double>(x.begin(), x.end()),
                jet.g,
                ginv,
                chol,
                frame,
                std::move(g2),
                std::move(r),
                0.0,
                1.0};
  pf.bianchi_residual = dfalg::first_bianchi_residual(pf.curvature);
  double sq = 1.0;
  for (int i = 0; i < n; ++i) sq *= chol(i, i);
  pf.sqrt_det = sq;
  return pf;
}

dfalg::DoubleForm covariant_hessian(const ChartMetric& m, const ScalarField& f,
                                    std::span<const double> x, const PointFrame* pf) {
  const int n = m.dim();
  std::optional<PointFrame> local;
  if (!pf) {
    local.emplace(curvature_at(m, x));
    pf = &*local;
  }
  std::vector<double> df(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) df[static_cast<std::size_t>(a)] = fd_partial(f, x, a, m.step(a), m.fd().order);
  linalg::Mat hc(n);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      double v = fd_second(f, x, a, b, m.step(a), m.step(b), m.fd().order);
      for (int mm = 0; mm < n; ++mm) v -= pf->gamma2(mm, a, b) * df[static_cast<std::size_t>(mm)];
      hc(a, b) = hc(b, a) = v;
    }
  const linalg::Mat hf = linalg::matmul(linalg::transpose(pf->frame), linalg::matmul(hc, pf->frame));
  return dfalg::DoubleForm::from_matrix(hf);
}

std::vector<double> frame_gradient(const ChartMetric& m, const ScalarField& f,
                                   std::span<const double> x, const PointFrame* pf) {
  const int n = m.dim();
  linalg::Mat frame(n);
  if (pf) {
    frame = pf->frame;
  } else {
    frame = linalg::transpose(linalg::inverse_lower(linalg::cholesky(m.metric_at(x))));
  }
  std::vector<double> df(static_cast<std::size_t>(n)), out(static_cast<std::size_t>(n), 0.0);
  for (int a = 0; a < n; ++a) df[static_cast<std::size_t>(a)] = fd_partial(f, x, a, m.step(a), m.fd().order);
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int a = 0; a < n; ++a) acc += frame(a, i) * df[static_cast<std::size_t>(a)];
    out[static_cast<std::size_t>(i)] = acc;
  }
  return out;
}

}  // namespace gbcurv::chart
