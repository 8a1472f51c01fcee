#include "gbcurv/exprlang/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <utility>

namespace gbcurv::exprlang {

namespace {

ExprPtr make(Expr::Kind kind, ExprPtr lhs = nullptr, ExprPtr rhs = nullptr) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->lhs = std::move(lhs);
  e->rhs = std::move(rhs);
  return e;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ExprPtr run() {
    ExprPtr e = expr();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool consume(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  ExprPtr expr() {
    ExprPtr lhs = term();
    for (;;) {
      if (consume('+'))
        lhs = make(Expr::Kind::Add, lhs, term());
      else if (consume('-'))
        lhs = make(Expr::Kind::Sub, lhs, term());
      else
        return lhs;
    }
  }

  ExprPtr term() {
    ExprPtr lhs = factor();
    for (;;) {
      if (consume('*'))
        lhs = make(Expr::Kind::Mul, lhs, factor());
      else if (consume('/'))
        lhs = make(Expr::Kind::Div, lhs, factor());
      else
        return lhs;
    }
  }

  ExprPtr factor() {
    if (consume('-')) return make(Expr::Kind::Neg, factor());
    return power();
  }

  ExprPtr power() {
    ExprPtr base = primary();
    if (consume('^')) return make(Expr::Kind::Pow, base, factor());
    return base;
  }

  ExprPtr primary() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      ExprPtr e = expr();
      if (!consume(')')) throw ParseError("expected ')'", pos_);
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    throw ParseError(pos_ < text_.size() ? std::string("unexpected character '") + c + "'"
                                         : std::string("unexpected end of input"),
                     pos_);
  }

  ExprPtr number() {
    const std::size_t start = pos_;
    double value = 0.0;
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr == begin) throw ParseError("malformed number", start);
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Number;
    e->number = value;
    return e;
  }

  ExprPtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    if (name == "pi") return make(Expr::Kind::Pi);
    if (name == "e") return make(Expr::Kind::E);
    if (name.size() >= 2 && name[0] == 'x') {
      int index = 0;
      auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), index);
      if (ec == std::errc() && ptr == name.data() + name.size()) {
        if (index < 1) throw ParseError("coordinate indices are 1-based", start);
        auto e = std::make_shared<Expr>();
        e->kind = Expr::Kind::Coord;
        e->coord = index - 1;
        return e;
      }
    }
    static constexpr std::pair<std::string_view, Func> kFuncs[] = {
        {"sin", Func::Sin}, {"cos", Func::Cos},   {"exp", Func::Exp},
        {"log", Func::Log}, {"sqrt", Func::Sqrt}, {"tanh", Func::Tanh}};
    for (const auto& [fname, f] : kFuncs) {
      if (name == fname) {
        if (!consume('(')) throw ParseError("expected '(' after function name", pos_);
        ExprPtr arg = expr();
        if (!consume(')')) throw ParseError("expected ')'", pos_);
        auto e = std::make_shared<Expr>();
        e->kind = Expr::Kind::Call;
        e->func = f;
        e->lhs = std::move(arg);
        return e;
      }
    }
    throw ParseError("unknown identifier '" + std::string(name) + "'", start);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

const char* func_name(Func f) {
  switch (f) {
    case Func::Sin: return "sin";
    case Func::Cos: return "cos";
    case Func::Exp: return "exp";
    case Func::Log: return "log";
    case Func::Sqrt: return "sqrt";
    case Func::Tanh: return "tanh";
  }
  return "?";
}

double finite(double v, const char* what) {
  if (!std::isfinite(v)) throw EvalError(std::string("non-finite result in ") + what);
  return v;
}

int precedence(Expr::Kind k) {
  switch (k) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub: return 1;
    case Expr::Kind::Mul:
    case Expr::Kind::Div: return 2;
    case Expr::Kind::Neg: return 3;
    case Expr::Kind::Pow: return 4;
    default: return 5;
  }
}

void print(const Expr& e, std::string& out) {
  const auto child = [&out](const Expr& c, int min_prec) {
    if (precedence(c.kind) < min_prec) {
      out += '(';
      print(c, out);
      out += ')';
    } else {
      print(c, out);
    }
  };
  switch (e.kind) {
    case Expr::Kind::Number: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", e.number);
      out += buf;
      return;
    }
    case Expr::Kind::Coord: out += "x" + std::to_string(e.coord + 1); return;
    case Expr::Kind::Pi: out += "pi"; return;
    case Expr::Kind::E: out += "e"; return;
    case Expr::Kind::Neg:
      out += '-';
      child(*e.lhs, 3);
      return;
    case Expr::Kind::Add:
      child(*e.lhs, 1);
      out += '+';
      child(*e.rhs, 2);
      return;
    case Expr::Kind::Sub:
      child(*e.lhs, 1);
      out += '-';
      child(*e.rhs, 2);
      return;
    case Expr::Kind::Mul:
      child(*e.lhs, 2);
      out += '*';
      child(*e.rhs, 3);
      return;
    case Expr::Kind::Div:
      child(*e.lhs, 2);
      out += '/';
      child(*e.rhs, 3);
      return;
    case Expr::Kind::Pow:
      child(*e.lhs, 5);
      out += '^';
      child(*e.rhs, 4);
      return;
    case Expr::Kind::Call:
      out += func_name(e.func);
      out += '(';
      print(*e.lhs, out);
      out += ')';
      return;
  }
}

}  // namespace

ExprPtr parse(std::string_view text) { return Parser(text).run(); }

double evaluate(const Expr& e, std::span<const double> point) {
  switch (e.kind) {
    case Expr::Kind::Number: return e.number;
    case Expr::Kind::Coord:
      if (e.coord >= static_cast<int>(point.size()))
        throw EvalError("coordinate x" + std::to_string(e.coord + 1) + " exceeds point dimension " +
                        std::to_string(point.size()));
      return point[static_cast<std::size_t>(e.coord)];
    case Expr::Kind::Pi: return 3.141592653589793238462643383279502884;
    case Expr::Kind::E: return 2.718281828459045235360287471352662498;
    case Expr::Kind::Neg: return -evaluate(*e.lhs, point);
    case Expr::Kind::Add: return evaluate(*e.lhs, point) + evaluate(*e.rhs, point);
    case Expr::Kind::Sub: return evaluate(*e.lhs, point) - evaluate(*e.rhs, point);
    case Expr::Kind::Mul: return evaluate(*e.lhs, point) * evaluate(*e.rhs, point);
    case Expr::Kind::Div: {
      const double den = evaluate(*e.rhs, point);
      if (den == 0.0) throw EvalError("division by zero");
      return finite(evaluate(*e.lhs, point) / den, "division");
    }
    case Expr::Kind::Pow:
      return finite(std::pow(evaluate(*e.lhs, point), evaluate(*e.rhs, point)), "power");
    case Expr::Kind::Call: {
      const double x = evaluate(*e.lhs, point);
      switch (e.func) {
        case Func::Sin: return std::sin(x);
        case Func::Cos: return std::cos(x);
        case Func::Exp: return finite(std::exp(x), "exp");
        case Func::Log:
          if (x <= 0.0) throw EvalError("log of a nonpositive value");
          return std::log(x);
        case Func::Sqrt:
          if (x < 0.0) throw EvalError("sqrt of a negative value");
          return std::sqrt(x);
        case Func::Tanh: return std::tanh(x);
      }
      throw EvalError("unknown function");
    }
  }
  throw EvalError("malformed expression tree");
}

std::string to_string(const Expr& e) {
  std::string out;
  print(e, out);
  return out;
}

int max_coord_index(const Expr& e) {
  int m = (e.kind == Expr::Kind::Coord) ? e.coord + 1 : 0;
  if (e.lhs) m = std::max(m, max_coord_index(*e.lhs));
  if (e.rhs) m = std::max(m, max_coord_index(*e.rhs));
  return m;
}

}  // namespace gbcurv::exprlang
