#include "gbcurv/chart/scalar_field.hpp"

#include <cmath>

namespace gbcurv::chart {

ScalarField ScalarField::from_expression(const std::string& text) {
  return from_expr(exprlang::parse(text));
}

ScalarField ScalarField::from_expr(exprlang::ExprPtr e) {
  ScalarField f;
  f.max_coord_ = exprlang::max_coord_index(*e);
  f.fn_ = [e = std::move(e)](std::span<const double> x) { return exprlang::evaluate(*e, x); };
  return f;
}

ScalarField ScalarField::from_function(Fn fn) {
  ScalarField f;
  f.fn_ = std::move(fn);
  return f;
}

ScalarField ScalarField::constant(double value) {
  ScalarField f;
  f.fn_ = [value](std::span<const double>) { return value; };
  return f;
}

ScalarField sf_add(const ScalarField& a, const ScalarField& b) {
  return ScalarField::from_function([a, b](std::span<const double> x) { return a(x) + b(x); });
}

ScalarField sf_mul(const ScalarField& a, const ScalarField& b) {
  return ScalarField::from_function([a, b](std::span<const double> x) { return a(x) * b(x); });
}

ScalarField sf_scale(const ScalarField& a, double s) {
  return ScalarField::from_function([a, s](std::span<const double> x) { return s * a(x); });
}

ScalarField sf_exp2(const ScalarField& f) {
  return ScalarField::from_function([f](std::span<const double> x) { return std::exp(2.0 * f(x)); });
}

ScalarField sf_pow(const ScalarField& f, double e) {
  return ScalarField::from_function([f, e](std::span<const double> x) { return std::pow(f(x), e); });
}

}  // namespace gbcurv::chart
