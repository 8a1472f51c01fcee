#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>

#include "gbcurv/exprlang/expr.hpp"

namespace gbcurv::chart {

// A real-valued function of chart coordinates: either a parsed expression or
// a closed-form callback. Evaluation is deterministic and side-effect free.
class ScalarField {
 public:
  using Fn = std::function<double(std::span<const double>)>;

  ScalarField() = default;

  static ScalarField from_expression(const std::string& text);
  static ScalarField from_expr(exprlang::ExprPtr e);
  static ScalarField from_function(Fn fn);
  static ScalarField constant(double value);

  bool valid() const { return static_cast<bool>(fn_); }
  double operator()(std::span<const double> x) const { return fn_(x); }

  // 1-based bound on coordinate indices for expression-backed fields,
  // 0 when unknown (callbacks).
  int max_coord() const { return max_coord_; }

 private:
  Fn fn_;
  int max_coord_ = 0;
};

// Pointwise combinators used to assemble conformal factors and test fields.
ScalarField sf_add(const ScalarField& a, const ScalarField& b);
ScalarField sf_mul(const ScalarField& a, const ScalarField& b);
ScalarField sf_scale(const ScalarField& a, double s);
// x -> exp(2 f(x))
ScalarField sf_exp2(const ScalarField& f);
// x -> f(x)^e ; negative bases raise EvalError through std::pow checks
ScalarField sf_pow(const ScalarField& f, double e);

}  // namespace gbcurv::chart
