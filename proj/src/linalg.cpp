#include "gbcurv/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "gbcurv/common.hpp"

namespace gbcurv::linalg {

Mat& Mat::operator+=(const Mat& o) {
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

Mat& Mat::operator-=(const Mat& o) {
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
  return *this;
}

Mat& Mat::operator*=(double s) {
  for (double& x : a_) x *= s;
  return *this;
}

Mat operator+(Mat a, const Mat& b) { return a += b; }
Mat operator-(Mat a, const Mat& b) { return a -= b; }
Mat operator*(Mat a, double s) { return a *= s; }

Mat matmul(const Mat& a, const Mat& b) {
  const int n = a.n();
  Mat c(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Mat transpose(const Mat& a) {
  Mat t(a.n());
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j) t(j, i) = a(i, j);
  return t;
}

double trace(const Mat& a) {
  double s = 0.0;
  for (int i = 0; i < a.n(); ++i) s += a(i, i);
  return s;
}

double max_abs(const Mat& a) {
  double m = 0.0;
  for (double x : a.data()) m = std::max(m, std::abs(x));
  return m;
}

double quad_form(const Mat& a, std::span<const double> u, std::span<const double> v) {
  double s = 0.0;
  for (int i = 0; i < a.n(); ++i) {
    double row = 0.0;
    for (int j = 0; j < a.n(); ++j) row += a(i, j) * v[static_cast<std::size_t>(j)];
    s += u[static_cast<std::size_t>(i)] * row;
  }
  return s;
}

Mat cholesky(const Mat& a) {
  const int n = a.n();
  Mat l(n);
  for (int j = 0; j < n; ++j) {
    double d = a(j, j);
    for (int k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > 0.0)) throw ChartError("matrix is not positive definite");
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (int i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / ljj;
    }
  }
  return l;
}

Mat inverse_lower(const Mat& l) {
  const int n = l.n();
  Mat inv(n);
  for (int j = 0; j < n; ++j) {
    inv(j, j) = 1.0 / l(j, j);
    for (int i = j + 1; i < n; ++i) {
      double s = 0.0;
      for (int k = j; k < i; ++k) s += l(i, k) * inv(k, j);
      inv(i, j) = -s / l(i, i);
    }
  }
  return inv;
}

Mat inverse_spd(const Mat& a) {
  const Mat linv = inverse_lower(cholesky(a));
  return matmul(transpose(linv), linv);
}

double sqrt_det_spd(const Mat& a) {
  const Mat l = cholesky(a);
  double d = 1.0;
  for (int i = 0; i < a.n(); ++i) d *= l(i, i);
  return d;
}

std::vector<double> jacobi_eigenvalues(Mat a) {
  const int n = a.n();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (off < 1e-28 * std::max(1.0, max_abs(a) * max_abs(a))) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> eig(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) eig[static_cast<std::size_t>(i)] = a(i, i);
  std::sort(eig.begin(), eig.end());
  return eig;
}

std::vector<double> elementary_symmetric(std::span<const double> vals) {
  std::vector<double> e(vals.size() + 1, 0.0);
  e[0] = 1.0;
  std::size_t used = 0;
  for (double v : vals) {
    ++used;
    for (std::size_t k = used; k >= 1; --k) e[k] += v * e[k - 1];
  }
  return e;
}

}  // namespace gbcurv::linalg
