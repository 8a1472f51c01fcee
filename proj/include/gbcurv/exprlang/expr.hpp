#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>

#include "gbcurv/common.hpp"

namespace gbcurv::exprlang {

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t offset)
      : Error(message + " (at offset " + std::to_string(offset) + ")"), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class Func { Sin, Cos, Exp, Log, Sqrt, Tanh };

// Immutable expression tree over coordinates x1..xN, literals, the constants
// pi and e, + - * / ^ and a fixed set of unary functions.
struct Expr {
  enum class Kind { Number, Coord, Pi, E, Neg, Add, Sub, Mul, Div, Pow, Call };
  Kind kind;
  double number = 0.0;
  int coord = 0;  // 0-based
  Func func = Func::Sin;
  ExprPtr lhs, rhs;
};

// Grammar (whitespace insignificant):
//   expr    := term (('+'|'-') term)*
//   term    := factor (('*'|'/') factor)*
//   factor  := '-' factor | power
//   power   := primary ('^' factor)?          -- right associative;
//              '^' binds tighter than unary minus, so -x1^2 = -(x1^2)
//   primary := number | 'pi' | 'e' | xN | func '(' expr ')' | '(' expr ')'
ExprPtr parse(std::string_view text);

// Deterministic double evaluation. Domain violations (log of a nonpositive
// value, division by zero, non-finite results) raise EvalError rather than
// propagating NaN.
double evaluate(const Expr& e, std::span<const double> point);

// Minimal-parenthesis printing; parse(print(parse(s))) is stable.
std::string to_string(const Expr& e);

// Largest 1-based coordinate index used, 0 if none.
int max_coord_index(const Expr& e);

}  // namespace gbcurv::exprlang
