#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "gbcurv/chart/chart_metric.hpp"
#include "gbcurv/curvinv/curvature_context.hpp"

namespace gbcurv::models {

// A closed-form model manifold: a chart presentation, an exact pointwise
// algebraic curvature tensor, and a table of closed-form invariants used as
// oracles. Chart-derived curvature must match the algebraic constructor at
// the stored sample points within finite-difference tolerance.
struct ModelManifold {
  std::string name;
  int n = 0;
  std::function<chart::ChartMetric(chart::FdConfig)> make_chart;
  std::function<curvinv::CurvatureContext()> make_context;

  std::map<int, double> h;      // h_{2k} keyed by k
  std::map<int, double> sigma;  // sigma_k(A) keyed by k
  double scal = 0.0;
  std::vector<double> ricci_eigs;
  std::vector<double> einstein_eigs;  // T_2 eigenvalues
  double volume = 0.0;                // 0 when no closed form applies

  std::vector<std::vector<double>> sample_points;  // interior chart points
};

// Constant curvature kappa in the conformally flat chart
// g = 4 delta / (1 + kappa |x|^2)^2.
ModelManifold space_form(int n, double kappa);

// Identity metric on [0, side]^n, fully periodic.
ModelManifold flat_torus(int n, double side);

// Riemannian product with block chart and block algebraic curvature.
ModelManifold product(const ModelManifold& m1, const ModelManifold& m2);

}  // namespace gbcurv::models
