#include "gbcurv/curvinv/curvature_context.hpp"

#include <cmath>
#include <string>

#include "gbcurv/common.hpp"
#include "gbcurv/linalg.hpp"
#include "gbcurv/rng.hpp"

namespace gbcurv::curvinv {

using dfalg::DoubleForm;

CurvatureContext::CurvatureContext(DoubleForm riemann, double tol)
    : n_(riemann.n()), ricci_(riemann.n(), 1, 1), schouten_(riemann.n(), 1, 1), weyl_(riemann.n(), 2, 2) {
  if (riemann.p() != 2 || riemann.q() != 2) throw DegreeError("curvature tensor must be a (2,2)-form");
  if (n_ < 2) throw DimensionError("curvature context needs n >= 2");
  const double scale = std::max(1.0, dfalg::max_abs(riemann));
  if (!dfalg::is_symmetric(riemann, tol)) throw ConsistencyError("curvature tensor is not pair-symmetric");
  bianchi_ = dfalg::first_bianchi_residual(riemann);
  if (bianchi_ > tol * scale)
    throw ConsistencyError("curvature tensor violates the first Bianchi identity: residual " +
                           std::to_string(bianchi_));

  const int kmax = std::max(1, n_ / 2);
  powers_.reserve(static_cast<std::size_t>(kmax) + 1);
  powers_.push_back(DoubleForm::scalar(n_, 1.0));
  powers_.push_back(std::move(riemann));
  for (int k = 2; k <= kmax; ++k) powers_.push_back(dfalg::exterior_product(powers_.back(), powers_[1]));

  ricci_ = dfalg::contract(powers_[1], 1);
  scal_ = dfalg::contract(ricci_, 1).scalar_value();

  if (n_ >= 3) {
    const DoubleForm g = DoubleForm::metric_power(n_, 1);
    schouten_ = (ricci_ - g * (scal_ / (2.0 * (n_ - 1)))) * (1.0 / (n_ - 2));
    weyl_ = powers_[1] - dfalg::exterior_product(g, schouten_);
    has_split_ = true;
    // Split self-checks: the decomposition must reconstruct R and W must be
    // trace free.
    const DoubleForm recon = weyl_ + dfalg::exterior_product(g, schouten_);
    if (dfalg::max_abs_diff(recon, powers_[1]) > tol * scale)
      throw ConsistencyError("R = W + gA reconstruction failed");
    if (dfalg::max_abs(dfalg::contract(weyl_, 1)) > 100.0 * tol * scale)
      throw ConsistencyError("Weyl part is not trace free");
  }
}

const DoubleForm& CurvatureContext::schouten() const {
  if (!has_split_) throw DimensionError("Schouten tensor needs n >= 3");
  return schouten_;
}

const DoubleForm& CurvatureContext::weyl() const {
  if (!has_split_) throw DimensionError("Weyl tensor needs n >= 3");
  return weyl_;
}

const DoubleForm& CurvatureContext::riemann_power(int k) const {
  if (k < 0 || k >= static_cast<int>(powers_.size()))
    throw DegreeError("R^" + std::to_string(k) + " exceeds dimension bound 2k <= n");
  return powers_[static_cast<std::size_t>(k)];
}

CurvatureContext random_curvature(int n, int m, std::uint64_t seed) {
  if (n < 3) throw DimensionError("random curvature generator needs n >= 3");
  if (m < 1) throw ConfigError("need at least one Gauss summand");
  Rng rng(seed);
  DoubleForm r(n, 2, 2);
  for (int s = 0; s < m; ++s) {
    linalg::Mat h(n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) h(i, j) = h(j, i) = rng.gaussian();
    const double eps = rng.sign();
    r += dfalg::power(DoubleForm::from_matrix(h), 2) * eps;
  }
  // Unit max-entry scale keeps high powers well conditioned.
  const double scale = dfalg::max_abs(r);
  if (scale > 0.0) r *= 1.0 / scale;
  return CurvatureContext(std::move(r));
}

CurvatureContext space_form_context(int n, double kappa) {
  return CurvatureContext(DoubleForm::metric_power(n, 2) * (kappa / 2.0));
}

}  // namespace gbcurv::curvinv
