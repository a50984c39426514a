#pragma once

#include <string>
#include <string_view>

#include "thue/exact/numberfield.hpp"
#include "thue/exact/poly.hpp"

namespace thue::ff {

// Element of Q(t): coprime numerator and monic denominator.
class RationalFunction {
 public:
  RationalFunction() : den_(QPoly::constant(1)) {}
  RationalFunction(long c) : num_(QPoly::constant(Rational(c))), den_(QPoly::constant(1)) {}
  RationalFunction(const Rational& c) : num_(QPoly::constant(c)), den_(QPoly::constant(1)) {}
  explicit RationalFunction(QPoly num) : num_(std::move(num)), den_(QPoly::constant(1)) {}
  RationalFunction(QPoly num, QPoly den);

  static RationalFunction t() { return RationalFunction(QPoly::x()); }
  // Parses an expression in t; throws ContractError on syntax errors,
  // unknown variables or division by zero.
  static RationalFunction parse(std::string_view text);

  const QPoly& num() const { return num_; }
  const QPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
  Rational constant_value() const;  // throws if not constant
  // Degree of f as a map P^1 -> P^1.
  int degree() const { return std::max(num_.degree(), den_.degree()); }

  RationalFunction operator-() const { return RationalFunction(-num_, den_, true); }
  RationalFunction& operator+=(const RationalFunction& o);
  RationalFunction& operator-=(const RationalFunction& o);
  RationalFunction& operator*=(const RationalFunction& o);
  RationalFunction& operator/=(const RationalFunction& o);
  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

  RationalFunction pow(long e) const;
  RationalFunction derivative() const;
  // f(g(t)).
  RationalFunction compose(const RationalFunction& g) const;

  Rational operator()(const Rational& x) const;  // throws at poles
  NFElem eval(const NFElem& x) const;            // throws at poles

  // Canonical text: integer-coefficient numerator and denominator with joint
  // content 1 and positive denominator leading coefficient, "num" when the
  // denominator is 1 and "(num)/(den)" otherwise.
  std::string to_string() const;

 private:
  RationalFunction(QPoly num, QPoly den, bool) : num_(std::move(num)), den_(std::move(den)) {}
  void normalise();
  QPoly num_, den_;
};

inline bool is_zero(const RationalFunction& f) { return f.is_zero(); }

// Integer numerator and denominator of the canonical form.
std::pair<QPoly, QPoly> integral_pair(const RationalFunction& f);

}  // namespace thue::ff
