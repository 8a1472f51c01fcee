#include "gbcurv/chart/quadrature.hpp"

#include <string>

#include "gbcurv/common.hpp"
#include "gbcurv/parallel.hpp"

namespace gbcurv::chart {

std::vector<int> uniform_resolution(int n, int per_axis) {
  return std::vector<int>(static_cast<std::size_t>(n), per_axis);
}

double integrate(const ChartMetric& m, const PointFunction& field,
                 std::span<const int> resolution, int jobs) {
  const int n = m.dim();
  if (!m.domain().fully_periodic())
    throw ChartError("quadrature is unsupported on non-periodic charts");
  std::vector<int> res(resolution.begin(), resolution.end());
  if (res.size() == 1) res.assign(static_cast<std::size_t>(n), res[0]);
  if (static_cast<int>(res.size()) != n) throw ConfigError("resolution must match the chart dimension");
  std::size_t total = 1;
  double cell = 1.0;
  for (int a = 0; a < n; ++a) {
    if (res[static_cast<std::size_t>(a)] < 1) throw ConfigError("resolution must be >= 1");
    total *= static_cast<std::size_t>(res[static_cast<std::size_t>(a)]);
    cell *= m.domain().size(a) / res[static_cast<std::size_t>(a)];
  }

  std::vector<double> vals(total);
  parallel_for(total, jobs, [&](std::size_t flat) {
    std::vector<double> x(static_cast<std::size_t>(n));
    std::size_t rest = flat;
    for (int a = n - 1; a >= 0; --a) {
      const std::size_t na = static_cast<std::size_t>(res[static_cast<std::size_t>(a)]);
      const std::size_t ia = rest % na;
      rest /= na;
      x[static_cast<std::size_t>(a)] =
          m.domain().lo[static_cast<std::size_t>(a)] + m.domain().size(a) * static_cast<double>(ia) / static_cast<double>(na);
    }
    vals[flat] = field(x) * m.sqrt_det_at(x);
  });
  return pairwise_sum(vals) * cell;
}

}  // namespace gbcurv::chart
