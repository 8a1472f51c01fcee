#pragma once

#include <span>
#include <vector>

#include "gbcurv/chart/chart_metric.hpp"
#include "gbcurv/verify/report.hpp"

namespace gbcurv::verify {

// Integral identities on a fully periodic chart of dimension 4:
// the Bochner row, the Hessian integration-by-parts row, the divergence rows
// for Delta and ell_2, and the conformal-invariance rows for the total h_4.
std::vector<Row> dim4_integral_rows(const chart::ChartMetric& m, const chart::ScalarField& f,
                                    std::span<const int> resolution, double tol, int jobs,
                                    nlohmann::json params);

// Integral identities for g_bar = v^(8/(n-4)) g on a fully periodic chart of
// dimension > 4: the total h_4 transformation and the Ricci-change identity,
// plus the reference-only report of the printed variant.
std::vector<Row> dim5_integral_rows(const chart::ChartMetric& m, const chart::ScalarField& v,
                                    std::span<const int> resolution, double tol, int jobs,
                                    nlohmann::json params);

// The quadratic curvature integrands consume two extra derivatives, so the
// integral rows use a finer default step, eps^(1/6)/6 per axis size.
std::vector<double> integral_default_steps(const chart::Domain& domain);

}  // namespace gbcurv::verify
