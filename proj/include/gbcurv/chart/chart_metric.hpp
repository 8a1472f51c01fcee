#pragma once

#include <vector>

#include "gbcurv/chart/scalar_field.hpp"
#include "gbcurv/dfalg/double_form.hpp"
#include "gbcurv/linalg.hpp"

namespace gbcurv::chart {

struct Domain {
  std::vector<double> lo, hi;
  std::vector<char> periodic;
  int dim() const { return static_cast<int>(lo.size()); }
  double size(int axis) const { return hi[static_cast<std::size_t>(axis)] - lo[static_cast<std::size_t>(axis)]; }
  bool fully_periodic() const;
};

struct FdConfig {
  int order = 4;                 // 2 or 4
  std::vector<double> step;      // per axis; empty selects eps^(1/6) * axis size
};

// A coordinate-chart metric field g(x) with a finite-difference
// configuration. Entries are scalar fields; g(x) must be symmetric positive
// definite wherever evaluated. Periodic axes are validated at construction.
class ChartMetric {
 public:
  ChartMetric(Domain domain, std::vector<ScalarField> entries, FdConfig fd = {});

  static ChartMetric euclidean(Domain domain, FdConfig fd = {});

  int dim() const { return n_; }
  const Domain& domain() const { return domain_; }
  const FdConfig& fd() const { return fd_; }
  double step(int axis) const { return steps_[static_cast<std::size_t>(axis)]; }
  const ScalarField& entry(int i, int j) const {
    return entries_[static_cast<std::size_t>(i) * n_ + j];
  }

  linalg::Mat metric_at(std::span<const double> x) const;
  double sqrt_det_at(std::span<const double> x) const;

  struct Jet {
    linalg::Mat g;
    std::vector<linalg::Mat> d;                // d[a](i,j)   = d_a g_ij
    std::vector<std::vector<linalg::Mat>> dd;  // dd[a][b](i,j) = d_a d_b g_ij
  };
  Jet metric_jet(std::span<const double> x) const;

  // Same domain and fd configuration, entries multiplied by factor(x).
  ChartMetric conformally_scaled(const ScalarField& factor) const;

  // Throws ChartError when a stencil around x would leave a non-periodic axis.
  void check_stencil_room(std::span<const double> x) const;

 private:
  int n_;
  Domain domain_;
  std::vector<ScalarField> entries_;  // n*n, symmetric
  FdConfig fd_;
  std::vector<double> steps_;
};

// Orthonormal-frame data at a point: frame columns E with E^T g E = I,
// Christoffel symbols, and the curvature packed as a frame (2,2)-double form
// normalized so that space forms give R = (kappa/2) g^2.
struct PointFrame {
  std::vector<double> point;
  linalg::Mat g;
  linalg::Mat g_inv;
  linalg::Mat chol;             // lower Cholesky factor of g
  linalg::Mat frame;            // E = chol^{-T}
  std::vector<double> gamma;    // second kind, [i][j][k] flattened
  dfalg::DoubleForm curvature;  // frame (2,2)
  double bianchi_residual;
  double sqrt_det;

  double gamma2(int i, int j, int k) const {
    return gamma[(static_cast<std::size_t>(i) * g.n() + j) * g.n() + k];
  }
};

PointFrame curvature_at(const ChartMetric& m, std::span<const double> x);

// Covariant Hessian of f pushed to the orthonormal frame, as a (1,1)-form.
dfalg::DoubleForm covariant_hessian(const ChartMetric& m, const ScalarField& f,
                                    std::span<const double> x, const PointFrame* pf = nullptr);

// df(E_i): gradient components in the orthonormal frame.
std::vector<double> frame_gradient(const ChartMetric& m, const ScalarField& f,
                                   std::span<const double> x, const PointFrame* pf = nullptr);

// Finite-difference stencils shared by the metric jet and scalar fields.
double fd_partial(const ScalarField& f, std::span<const double> x, int axis, double h, int order);
double fd_second(const ScalarField& f, std::span<const double> x, int a, int b, double ha, double hb,
                 int order);

}  // namespace gbcurv::chart
