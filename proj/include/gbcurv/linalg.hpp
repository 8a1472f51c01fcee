#pragma once

#include <span>
#include <vector>

namespace gbcurv::linalg {

// Small dense square matrix, row-major; dimensions here never exceed 12.
class Mat {
 public:
  Mat() = default;
  explicit Mat(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0.0) {}

  static Mat identity(int n) {
    Mat m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int n() const { return n_; }
  double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  std::span<const double> data() const { return a_; }

  Mat& operator+=(const Mat& o);
  Mat& operator-=(const Mat& o);
  Mat& operator*=(double s);

 private:
  int n_ = 0;
  std::vector<double> a_;
};

Mat operator+(Mat a, const Mat& b);
Mat operator-(Mat a, const Mat& b);
Mat operator*(Mat a, double s);
Mat matmul(const Mat& a, const Mat& b);
Mat transpose(const Mat& a);
double trace(const Mat& a);
double max_abs(const Mat& a);
double quad_form(const Mat& a, std::span<const double> u, std::span<const double> v);

// Lower-triangular Cholesky factor; throws ChartError if not SPD.
Mat cholesky(const Mat& a);
// Inverse of a lower-triangular matrix.
Mat inverse_lower(const Mat& l);
// SPD inverse via Cholesky.
Mat inverse_spd(const Mat& a);
double sqrt_det_spd(const Mat& a);

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
std::vector<double> jacobi_eigenvalues(Mat a);

// e_0..e_m of the given values (e_0 = 1).
std::vector<double> elementary_symmetric(std::span<const double> vals);

}  // namespace gbcurv::linalg
