#include "gbcurv/dfalg/double_form.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gbcurv/common.hpp"
#include "gbcurv/dfalg/subset_tables.hpp"

namespace gbcurv::dfalg {

namespace {

void check_same_space(const DoubleForm& a, const DoubleForm& b) {
  if (a.n() != b.n())
    throw DimensionError("double forms live over different dimensions: " + std::to_string(a.n()) +
                         " vs " + std::to_string(b.n()));
}

void check_same_shape(const DoubleForm& a, const DoubleForm& b) {
  check_same_space(a, b);
  if (a.p() != b.p() || a.q() != b.q()) throw DimensionError("double form bidegree mismatch");
}

// Sorts idx in place, returning the permutation sign, or 0 on a repeat.
double sort_sign(std::span<int> idx) {
  double sign = 1.0;
  for (std::size_t i = 1; i < idx.size(); ++i) {
    int v = idx[i];
    std::size_t j = i;
    while (j > 0 && idx[j - 1] > v) {
      idx[j] = idx[j - 1];
      --j;
      sign = -sign;
    }
    idx[j] = v;
  }
  for (std::size_t i = 1; i < idx.size(); ++i)
    if (idx[i] == idx[i - 1]) return 0.0;
  return sign;
}

}  // namespace

DoubleForm::DoubleForm(int n, int p, int q) : n_(n), p_(p), q_(q) {
  if (n < 1 || n > kMaxDim) throw DimensionError("ambient dimension must be in [1," + std::to_string(kMaxDim) + "]");
  if (p < 0 || p > n || q < 0 || q > n) throw DegreeError("bidegree out of range");
  rows_ = static_cast<int>(binomial(n, p));
  cols_ = static_cast<int>(binomial(n, q));
  e_.assign(static_cast<std::size_t>(rows_) * cols_, 0.0);
}

DoubleForm DoubleForm::scalar(int n, double value) {
  DoubleForm s(n, 0, 0);
  s.at(0, 0) = value;
  return s;
}

DoubleForm DoubleForm::metric_power(int n, int r) {
  if (r < 0 || r > n) throw DegreeError("metric power out of range: r=" + std::to_string(r));
  DoubleForm g(n, r, r);
  const double d = static_cast<double>(factorial(r));
  for (int i = 0; i < g.rows(); ++i) g.at(i, i) = d;
  return g;
}

DoubleForm DoubleForm::from_matrix(const linalg::Mat& m) {
  DoubleForm h(m.n(), 1, 1);
  for (int i = 0; i < m.n(); ++i)
    for (int j = 0; j < m.n(); ++j) h.at(i, j) = m(i, j);
  return h;
}

double DoubleForm::scalar_value() const {
  if (!is_scalar()) throw DegreeError("not a (0,0)-form");
  return e_[0];
}

double DoubleForm::value_at(std::span<const int> xs, std::span<const int> ys) const {
  if (static_cast<int>(xs.size()) != p_ || static_cast<int>(ys.size()) != q_)
    throw DegreeError("tuple sizes do not match bidegree");
  std::vector<int> x(xs.begin(), xs.end()), y(ys.begin(), ys.end());
  const double sx = sort_sign(x);
  if (sx == 0.0) return 0.0;
  const double sy = sort_sign(y);
  if (sy == 0.0) return 0.0;
  std::uint32_t mx = 0, my = 0;
  for (int i : x) mx |= (1u << i);
  for (int i : y) my |= (1u << i);
  const SubsetTable& rt = SubsetTable::get(n_, p_);
  const SubsetTable& ct = SubsetTable::get(n_, q_);
  return sx * sy * at(rt.rank(mx), ct.rank(my));
}

DoubleForm& DoubleForm::operator+=(const DoubleForm& o) {
  check_same_shape(*this, o);
  for (std::size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
  return *this;
}

DoubleForm& DoubleForm::operator-=(const DoubleForm& o) {
  check_same_shape(*this, o);
  for (std::size_t i = 0; i < e_.size(); ++i) e_[i] -= o.e_[i];
  return *this;
}

DoubleForm& DoubleForm::operator*=(double s) {
  for (double& x : e_) x *= s;
  return *this;
}

DoubleForm operator+(DoubleForm a, const DoubleForm& b) { return a += b; }
DoubleForm operator-(DoubleForm a, const DoubleForm& b) { return a -= b; }
DoubleForm operator*(DoubleForm a, double s) { return a *= s; }
DoubleForm operator*(double s, DoubleForm a) { return a *= s; }

DoubleForm exterior_product(const DoubleForm& a, const DoubleForm& b) {
  check_same_space(a, b);
  const int n = a.n();
  if (a.p() + b.p() > n || a.q() + b.q() > n)
    throw DegreeError("exterior product degree overflow: (" + std::to_string(a.p() + b.p()) + "," +
                      std::to_string(a.q() + b.q()) + ") in dimension " + std::to_string(n));
  const SplitTable& rows = SplitTable::get(n, a.p(), b.p());
  const SplitTable& cols = SplitTable::get(n, a.q(), b.q());
  DoubleForm out(n, a.p() + b.p(), a.q() + b.q());
  for (int k = 0; k < out.rows(); ++k) {
    const auto rs = rows.splits(k);
    for (int l = 0; l < out.cols(); ++l) {
      const auto cs = cols.splits(l);
      double acc = 0.0;
      for (const Split& r : rs) {
        double inner = 0.0;
        for (const Split& c : cs)
          inner += c.sign * a.at(r.left, c.left) * b.at(r.right, c.right);
        acc += r.sign * inner;
      }
      out.at(k, l) = acc;
    }
  }
  return out;
}

namespace {

DoubleForm contract_once(const DoubleForm& w) {
  const int n = w.n();
  const SubsetTable& rin = SubsetTable::get(n, w.p());
  const SubsetTable& cin = SubsetTable::get(n, w.q());
  DoubleForm out(n, w.p() - 1, w.q() - 1);
  const SubsetTable& rout = SubsetTable::get(n, w.p() - 1);
  const SubsetTable& cout = SubsetTable::get(n, w.q() - 1);
  for (int i = 0; i < out.rows(); ++i) {
    const std::uint32_t mi = rout.mask(i);
    for (int j = 0; j < out.cols(); ++j) {
      const std::uint32_t mj = cout.mask(j);
      const std::uint32_t occupied = mi | mj;
      double acc = 0.0;
      for (int m = 0; m < n; ++m) {
        const std::uint32_t bit = 1u << m;
        if (occupied & bit) continue;
        acc += prefix_sign(mi, m) * prefix_sign(mj, m) * w.at(rin.rank(mi | bit), cin.rank(mj | bit));
      }
      out.at(i, j) = acc;
    }
  }
  return out;
}

}  // namespace

DoubleForm contract(const DoubleForm& w, int r) {
  if (r < 0 || r > std::min(w.p(), w.q()))
    throw DegreeError("cannot contract " + std::to_string(r) + " times a (" + std::to_string(w.p()) +
                      "," + std::to_string(w.q()) + ")-form");
  DoubleForm out = w;
  for (int i = 0; i < r; ++i) out = contract_once(out);
  return out;
}

DoubleForm hodge_star(const DoubleForm& w) {
  const int n = w.n();
  const StarTable& rt = StarTable::get(n, w.p());
  const StarTable& ct = StarTable::get(n, w.q());
  DoubleForm out(n, n - w.p(), n - w.q());
  for (int i = 0; i < w.rows(); ++i) {
    const StarEntry re = rt.entry(i);
    for (int j = 0; j < w.cols(); ++j) {
      const StarEntry ce = ct.entry(j);
      out.at(re.comp, ce.comp) = re.sign * ce.sign * w.at(i, j);
    }
  }
  return out;
}

double inner_product(const DoubleForm& a, const DoubleForm& b) {
  check_same_shape(a, b);
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) s += a.at(i, j) * b.at(i, j);
  return s;
}

DoubleForm power(const DoubleForm& w, int k) {
  if (k < 0) throw DegreeError("negative exterior power");
  if (k == 0) return DoubleForm::scalar(w.n(), 1.0);
  DoubleForm out = w;
  for (int i = 1; i < k; ++i) out = exterior_product(out, w);
  return out;
}

double first_bianchi_residual(const DoubleForm& w) {
  if (w.p() != 2 || w.q() != 2) throw DegreeError("first Bianchi residual needs a (2,2)-form");
  const int n = w.n();
  if (n < 3) return 0.0;
  double worst = 0.0;
  int xs[2], ys[2];
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      for (int z = y + 1; z < n; ++z)
        for (int t = 0; t < n; ++t) {
          xs[0] = x, xs[1] = y, ys[0] = z, ys[1] = t;
          double cyc = w.value_at(std::span<const int>(xs, 2), std::span<const int>(ys, 2));
          xs[0] = y, xs[1] = z, ys[0] = x;
          cyc += w.value_at(std::span<const int>(xs, 2), std::span<const int>(ys, 2));
          xs[0] = z, xs[1] = x, ys[0] = y;
          cyc += w.value_at(std::span<const int>(xs, 2), std::span<const int>(ys, 2));
          worst = std::max(worst, std::abs(cyc));
        }
  return worst;
}

double max_abs(const DoubleForm& w) {
  double m = 0.0;
  for (int i = 0; i < w.rows(); ++i)
    for (int j = 0; j < w.cols(); ++j) m = std::max(m, std::abs(w.at(i, j)));
  return m;
}

double max_abs_diff(const DoubleForm& a, const DoubleForm& b) {
  check_same_shape(a, b);
  double m = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a.at(i, j) - b.at(i, j)));
  return m;
}

double rel_residual(const DoubleForm& a, const DoubleForm& b) {
  return max_abs_diff(a, b) / std::max({1.0, max_abs(a), max_abs(b)});
}

bool is_symmetric(const DoubleForm& w, double tol) {
  if (w.p() != w.q()) return false;
  const double scale = std::max(1.0, max_abs(w));
  for (int i = 0; i < w.rows(); ++i)
    for (int j = i + 1; j < w.cols(); ++j)
      if (std::abs(w.at(i, j) - w.at(j, i)) > tol * scale) return false;
  return true;
}

DoubleForm block_transpose(const DoubleForm& w) {
  if (w.p() != w.q()) throw DegreeError("block transpose needs a (p,p)-form");
  DoubleForm out(w.n(), w.p(), w.q());
  for (int i = 0; i < w.rows(); ++i)
    for (int j = 0; j < w.cols(); ++j) out.at(j, i) = w.at(i, j);
  return out;
}

linalg::Mat to_matrix(const DoubleForm& w) {
  if (w.p() != 1 || w.q() != 1) throw DegreeError("to_matrix needs a (1,1)-form");
  linalg::Mat m(w.n());
  for (int i = 0; i < w.n(); ++i)
    for (int j = 0; j < w.n(); ++j) m(i, j) = w.at(i, j);
  return m;
}

}  // namespace gbcurv::dfalg
