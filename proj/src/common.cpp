#include "gbcurv/common.hpp"

#include <array>
#include <cmath>

namespace gbcurv {

namespace {

constexpr std::array<std::int64_t, 21> kFactorials = [] {
  std::array<std::int64_t, 21> t{};
  t[0] = 1;
  for (int i = 1; i <= 20; ++i) t[i] = t[i - 1] * i;
  return t;
}();

}  // namespace

std::int64_t factorial(int k) {
  if (k < 0 || k > 20) throw DegreeError("factorial(" + std::to_string(k) + ") out of exact range");
  return kFactorials[static_cast<std::size_t>(k)];
}

std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double rel_residual(double lhs, double rhs) {
  const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
  return std::abs(lhs - rhs) / scale;
}

double pairwise_sum(std::span<const double> xs) {
  const std::size_t m = xs.size();
  if (m <= 8) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = m / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

}  // namespace gbcurv
