#pragma once

#include <span>
#include <vector>

#include "gbcurv/linalg.hpp"

namespace gbcurv::dfalg {

// A (p,q)-double form on an n-dimensional Euclidean space, expressed in an
// orthonormal frame. Antisymmetry inside each argument block is implicit in
// the storage: entries are indexed by (lexicographic p-subset, lexicographic
// q-subset) of {0,...,n-1}, giving a dense C(n,p) x C(n,q) matrix. A
// (0,0)-form is a single scalar. Values on arbitrary index tuples are
// recovered with value_at (sorting signs applied, repeated indices give 0).
class DoubleForm {
 public:
  DoubleForm(int n, int p, int q);

  static DoubleForm scalar(int n, double value);
  // g^r in the orthonormal frame: entries r! on the diagonal, else 0.
  static DoubleForm metric_power(int n, int r);
  // Symmetric or general (1,1)-form from its frame matrix.
  static DoubleForm from_matrix(const linalg::Mat& m);

  int n() const { return n_; }
  int p() const { return p_; }
  int q() const { return q_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_scalar() const { return p_ == 0 && q_ == 0; }
  double scalar_value() const;

  double& at(int i, int j) { return e_[static_cast<std::size_t>(i) * cols_ + j]; }
  double at(int i, int j) const { return e_[static_cast<std::size_t>(i) * cols_ + j]; }

  // Value on fully indexed argument tuples (sizes p and q, 0-based indices).
  double value_at(std::span<const int> xs, std::span<const int> ys) const;

  DoubleForm& operator+=(const DoubleForm& o);
  DoubleForm& operator-=(const DoubleForm& o);
  DoubleForm& operator*=(double s);

 private:
  int n_, p_, q_;
  int rows_, cols_;
  std::vector<double> e_;
};

DoubleForm operator+(DoubleForm a, const DoubleForm& b);
DoubleForm operator-(DoubleForm a, const DoubleForm& b);
DoubleForm operator*(DoubleForm a, double s);
DoubleForm operator*(double s, DoubleForm a);

// Exterior (Kulkarni-Nomizu) product of double forms.
DoubleForm exterior_product(const DoubleForm& a, const DoubleForm& b);

// r-fold contraction; one step traces one vector from each block.
DoubleForm contract(const DoubleForm& w, int r);

// Generalized Hodge star, applied factor-wise to each argument block:
// (*w)[I^c, J^c] = eps(I) eps(J) w[I, J].
// On bidegrees of equal parity (p == q mod 2, in particular every (p,p)
// curvature object) it satisfies ** = id, g^r = *c^r* and c^r = *g^r*;
// for odd p-q those conjugations pick up a dimension-dependent sign.
DoubleForm hodge_star(const DoubleForm& w);

// Frame inner product: sum of entrywise products over subset pairs.
double inner_product(const DoubleForm& a, const DoubleForm& b);

// k-th exterior power; w^0 = 1.
DoubleForm power(const DoubleForm& w, int k);

// Max over index tuples of |w(x,y;z,t) + w(y,z;x,t) + w(z,x;y,t)| for a
// (2,2)-form; 0 for curvature-type tensors.
double first_bianchi_residual(const DoubleForm& w);

double max_abs(const DoubleForm& w);
double max_abs_diff(const DoubleForm& a, const DoubleForm& b);
// max entry difference normalized by max(1, |a|_inf, |b|_inf).
double rel_residual(const DoubleForm& a, const DoubleForm& b);
bool is_symmetric(const DoubleForm& w, double tol = 1e-12);
// (p,p)-form with entries mirrored across the block swap.
DoubleForm block_transpose(const DoubleForm& w);
linalg::Mat to_matrix(const DoubleForm& w);  // (1,1)-forms only

}  // namespace gbcurv::dfalg
