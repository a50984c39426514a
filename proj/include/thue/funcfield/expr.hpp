#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>

#include "thue/errors.hpp"
#include "thue/exact/rational.hpp"

namespace thue::ff {

// Arithmetic expression over integers and named variables, with + - * / and
// integer powers. Parsed once, evaluated in any field-like algebra.
struct Expr {
  enum class Kind { Number, Var, Neg, Add, Sub, Mul, Div, Pow };
  Kind kind = Kind::Number;
  Integer number;
  std::string name;
  long exponent = 0;
  std::shared_ptr<const Expr> lhs, rhs;
};

using ExprPtr = std::shared_ptr<const Expr>;

// Throws ContractError with the column of the offending character.
ExprPtr parse_expr(std::string_view text);

template <class V>
V evaluate(const Expr& e, const std::function<V(const std::string&)>& var) {
  switch (e.kind) {
    case Expr::Kind::Number:
      return V(Rational(e.number));
    case Expr::Kind::Var:
      return var(e.name);
    case Expr::Kind::Neg:
      return V(0) - evaluate<V>(*e.lhs, var);
    case Expr::Kind::Add:
      return evaluate<V>(*e.lhs, var) + evaluate<V>(*e.rhs, var);
    case Expr::Kind::Sub:
      return evaluate<V>(*e.lhs, var) - evaluate<V>(*e.rhs, var);
    case Expr::Kind::Mul:
      return evaluate<V>(*e.lhs, var) * evaluate<V>(*e.rhs, var);
    case Expr::Kind::Div:
      return evaluate<V>(*e.lhs, var) / evaluate<V>(*e.rhs, var);
    case Expr::Kind::Pow: {
      V base = evaluate<V>(*e.lhs, var);
      long n = e.exponent;
      bool inv = n < 0;
      if (inv) n = -n;
      V r(1);
      for (long i = 0; i < n; ++i) r = r * base;
      return inv ? V(1) / r : r;
    }
  }
  throw InternalError("evaluate: unknown expression node");
}

}  // namespace thue::ff
