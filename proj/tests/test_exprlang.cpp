#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "gbcurv/exprlang/expr.hpp"

using namespace gbcurv;
using exprlang::parse;

namespace {

double eval(const std::string& text, std::vector<double> point = {}) {
  return exprlang::evaluate(*parse(text), point);
}

}  // namespace

TEST_CASE("arithmetic and precedence") {
  CHECK(eval("1 + 2*3") == 7.0);
  CHECK(eval("(1 + 2)*3") == 9.0);
  CHECK(eval("2^3^2") == 512.0);    // right associative
  CHECK(eval("-x1^2", {3.0}) == -9.0);  // power binds tighter than unary minus
  CHECK(eval("(-x1)^2", {3.0}) == 9.0);
  CHECK(eval("2^-2") == 0.25);
  CHECK(eval("6/3/2") == 1.0);
  CHECK(eval("--2") == 2.0);
}

TEST_CASE("constants and functions") {
  CHECK(eval("pi") == doctest::Approx(3.141592653589793).epsilon(1e-16));
  CHECK(eval("e") == doctest::Approx(2.718281828459045).epsilon(1e-16));
  CHECK(eval("exp(0)") == 1.0);
  CHECK(eval("0.1*sin(x1)*cos(x2)", {3.141592653589793 / 2.0, 0.0}) == doctest::Approx(0.1));
  CHECK(eval("sqrt(16)") == 4.0);
  CHECK(eval("tanh(0)") == 0.0);
  CHECK(eval("log(e)") == doctest::Approx(1.0));
}

TEST_CASE("hand-checked value table") {
  struct Case {
    const char* text;
    std::vector<double> at;
    double expect;
  };
  const Case cases[] = {
      {"3.5", {}, 3.5},
      {"2+3*4-1", {}, 13.0},
      {"10/4", {}, 2.5},
      {"2^10", {}, 1024.0},
      {"x1+x2*x3", {1, 2, 3}, 7.0},
      {"sin(pi/2)", {}, 1.0},
      {"cos(pi)", {}, -1.0},
      {"exp(1)", {}, 2.718281828459045},
      {"log(1)", {}, 0.0},
      {"sqrt(2)^2", {}, 2.0000000000000004},
      {"tanh(1)", {}, 0.7615941559557649},
      {"1/3", {}, 0.3333333333333333},
      {"-5+3", {}, -2.0},
      {"2*(x1-1)^3", {3}, 16.0},
      {"1e3", {}, 1000.0},
      {"2.5e-2", {}, 0.025},
      {"pi*e", {}, 8.539734222673566},
      {"x1^x2", {2, 0.5}, 1.4142135623730951},
      {"sin(x1)^2+cos(x1)^2", {0.7}, 1.0},
      {"(1+2)*(3+4)", {}, 21.0},
  };
  for (const Case& c : cases)
    CHECK(eval(c.text, c.at) == doctest::Approx(c.expect).epsilon(1e-15));
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_AS(parse("1 +"), exprlang::ParseError);
  CHECK_THROWS_AS(parse("sin 2"), exprlang::ParseError);
  CHECK_THROWS_AS(parse("foo(2)"), exprlang::ParseError);
  CHECK_THROWS_AS(parse("1 + bar"), exprlang::ParseError);
  CHECK_THROWS_AS(parse("(1+2"), exprlang::ParseError);
  CHECK_THROWS_AS(parse("1 2"), exprlang::ParseError);
  CHECK_THROWS_AS(parse("x0"), exprlang::ParseError);
  try {
    parse("1 + bar");
  } catch (const exprlang::ParseError& e) {
    CHECK(e.offset() == 4);
  }
}

TEST_CASE("evaluation domain errors instead of NaN") {
  CHECK_THROWS_AS(eval("x1/x2", {1.0, 0.0}), EvalError);
  CHECK_THROWS_AS(eval("log(0)"), EvalError);
  CHECK_THROWS_AS(eval("log(-1)"), EvalError);
  CHECK_THROWS_AS(eval("sqrt(-4)"), EvalError);
  CHECK_THROWS_AS(eval("(-1)^0.5"), EvalError);
  CHECK_THROWS_AS(eval("exp(10000)"), EvalError);
  CHECK_THROWS_AS(eval("x3", {1.0, 2.0}), EvalError);
}

TEST_CASE("print/parse stability") {
  const char* corpus[] = {
      "1+2*3",
      "-x1^2",
      "(x1+x2)*(x1-x2)",
      "sin(x1)*cos(x2)",
      "2^3^2",
      "(2^3)^2",
      "1/(1+x1^2)",
      "exp(-x1^2/2)",
      "sqrt(x1^2+x2^2)",
      "tanh(x1)/(1+e)",
      "pi*x1",
      "-(x1+x2)",
      "x1-x2-x3",
      "x1/(x2*x3)",
      "0.1*sin(x1)*cos(x2)",
      "1.5+0.3*cos(x1)",
      "x1^2+2*x1*x2+x2^2",
      "log(1+exp(x1))",
      "2*(x1-1)^3",
      "--x1",
      "1e-3*x1",
      "x10+x11",
      "(((x1)))",
      "x1*-1",  // unary minus as a factor after '*'
      "3",
      "x2",
      "pi",
      "e",
      "sin(cos(exp(x1)))",
      "x1^-2",
      "1/3+1/5+1/7",
      "-1^2",
      "x1*x1*x1",
      "sin(x1+x2)-sin(x1)*cos(x2)-cos(x1)*sin(x2)",
      "exp(x1)*exp(-x1)",
      "(x1+1)/(x1-1)",
      "sqrt(sqrt(x1^4))",
      "tanh(x1)^2",
      "1-2-3-4",
      "1/2/3/4",
      "2^2^2",
      "-x1*-x2",
      "cos(2*pi*x1)",
      "x1^2^x2",
      "0.5*(x1+x2)^2-0.5*x1^2-x1*x2-0.5*x2^2",
      "log(exp(x1^2))",
      "e^x1",
      "x1/x2^2",
      "(x1/x2)^2",
      "1+(2+(3+(4)))",
  };
  for (const char* text : corpus) {
    const auto first = parse(text);
    const std::string printed = exprlang::to_string(*first);
    const auto second = parse(printed);
    CHECK(exprlang::to_string(*second) == printed);
    // Same value at a fixed point.
    const std::vector<double> at{0.3, -1.2, 2.5, 0.7, 1.1, 0.2, 0.4, 0.6, 0.8, 1.0, 1.3};
    CHECK(exprlang::evaluate(*first, at) == exprlang::evaluate(*second, at));
  }
}

TEST_CASE("max coordinate index") {
  CHECK(exprlang::max_coord_index(*parse("sin(x3)+x1")) == 3);
  CHECK(exprlang::max_coord_index(*parse("1+pi")) == 0);
}
