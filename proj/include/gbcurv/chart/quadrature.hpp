#pragma once

#include <functional>
#include <span>
#include <vector>

#include "gbcurv/chart/chart_metric.hpp"

namespace gbcurv::chart {

using PointFunction = std::function<double(std::span<const double>)>;

// Tensor-product rectangle rule against the volume density sqrt(det g);
// spectrally accurate on fully periodic charts, which are the only ones
// supported. `resolution` gives per-axis point counts (a single value
// broadcasts). Evaluations run in parallel; the reduction is a fixed
// pairwise tree, so results do not depend on the worker count.
double integrate(const ChartMetric& m, const PointFunction& field,
                 std::span<const int> resolution, int jobs = 1);

std::vector<int> uniform_resolution(int n, int per_axis);

}  // namespace gbcurv::chart
