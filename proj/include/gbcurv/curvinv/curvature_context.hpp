#pragma once

#include <cstdint>
#include <vector>

#include "gbcurv/dfalg/double_form.hpp"

namespace gbcurv::curvinv {

// An algebraic curvature tensor at a point: a symmetric (2,2)-double form
// satisfying the first Bianchi identity, with its standard contractions and
// the Weyl/Schouten split R = W + gA cached eagerly. Immutable after
// construction; every derived operation is a pure function of the fields.
class CurvatureContext {
 public:
  explicit CurvatureContext(dfalg::DoubleForm riemann, double tol = 1e-10);

  int n() const { return n_; }
  const dfalg::DoubleForm& riemann() const { return powers_[1]; }
  const dfalg::DoubleForm& ricci() const { return ricci_; }
  double scalar_curvature() const { return scal_; }
  // Schouten and Weyl require n >= 3.
  const dfalg::DoubleForm& schouten() const;
  const dfalg::DoubleForm& weyl() const;
  double bianchi_residual() const { return bianchi_; }

  // R^k for 0 <= 2k <= n, precomputed.
  const dfalg::DoubleForm& riemann_power(int k) const;
  int max_power() const { return static_cast<int>(powers_.size()) - 1; }

 private:
  int n_;
  std::vector<dfalg::DoubleForm> powers_;  // powers_[k] = R^k
  dfalg::DoubleForm ricci_;
  double scal_;
  double bianchi_;
  bool has_split_ = false;
  dfalg::DoubleForm schouten_;
  dfalg::DoubleForm weyl_;
};

// Test-input generator: R = sum_i eps_i h_i^2 with random symmetric h_i,
// rescaled to unit max entry. Gauss sums are automatically symmetric and
// first-Bianchi. Deterministic per seed.
CurvatureContext random_curvature(int n, int m, std::uint64_t seed);

// Constant-sectional-curvature tensor R = (kappa/2) g^2.
CurvatureContext space_form_context(int n, double kappa);

}  // namespace gbcurv::curvinv
