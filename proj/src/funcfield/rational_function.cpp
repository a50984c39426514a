#include "thue/funcfield/rational_function.hpp"

#include "thue/funcfield/expr.hpp"

namespace thue::ff {

RationalFunction::RationalFunction(QPoly num, QPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw ContractError("rational function with zero denominator");
  normalise();
}

void RationalFunction::normalise() {
  if (num_.is_zero()) {
    den_ = QPoly::constant(1);
    return;
  }
  if (den_.degree() > 0) {
    QPoly g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = num_ / g;
      den_ = den_ / g;
    }
  }
  Rational l = den_.lead();
  if (l != 1) {
    Rational inv = 1 / l;
    num_ *= inv;
    den_ *= inv;
  }
}

RationalFunction RationalFunction::parse(std::string_view text) {
  auto e = parse_expr(text);
  std::function<RationalFunction(const std::string&)> var = [&](const std::string& name) {
    if (name != "t") throw ContractError("unknown variable '" + name + "' in '" + std::string(text) + "'");
    return RationalFunction::t();
  };
  return evaluate<RationalFunction>(*e, var);
}

Rational RationalFunction::constant_value() const {
  if (!is_constant()) throw ContractError("rational function is not constant");
  return num_.coeff(0);
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
  }
  normalise();
  return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) { return *this += -o; }

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
  num_ = num_ * o.num_;
  den_ = den_ * o.den_;
  normalise();
  return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& o) {
  if (o.is_zero()) throw ContractError("division by the zero rational function");
  num_ = num_ * o.den_;
  den_ = den_ * o.num_;
  normalise();
  return *this;
}

RationalFunction RationalFunction::pow(long e) const {
  if (e < 0) {
    if (is_zero()) throw ContractError("negative power of zero");
    return RationalFunction(den_.pow(-e), num_.pow(-e));
  }
  // num and den stay coprime under powers.
  RationalFunction r(num_.pow(e), den_.pow(e), true);
  return r;
}

RationalFunction RationalFunction::derivative() const {
  return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RationalFunction RationalFunction::compose(const RationalFunction& g) const {
  RationalFunction n, d;
  const auto& nc = num_.coeffs();
  const auto& dc = den_.coeffs();
  for (std::size_t i = nc.size(); i-- > 0;) n = n * g + RationalFunction(nc[i]);
  for (std::size_t i = dc.size(); i-- > 0;) d = d * g + RationalFunction(dc[i]);
  return n / d;
}

Rational RationalFunction::operator()(const Rational& x) const {
  Rational d = den_(x);
  if (sgn(d) == 0) throw ContractError("evaluation at a pole t = " + thue::to_string(x));
  return num_(x) / d;
}

NFElem RationalFunction::eval(const NFElem& x) const {
  NFElem d = den_.eval<NFElem>(x);
  if (thue::is_zero(d)) throw ContractError("evaluation at a pole (place " + thue::to_string(minimal_polynomial(x), "t") + ")");
  return num_.eval<NFElem>(x) / d;
}

std::pair<QPoly, QPoly> integral_pair(const RationalFunction& f) {
  // Scale so both become integral with joint content 1.
  Integer l = 1, g = 0;
  for (const auto* p : {&f.num(), &f.den()})
    for (const auto& c : p->coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  QPoly n = f.num() * Rational(l), d = f.den() * Rational(l);
  for (const auto* p : {&n, &d})
    for (const auto& c : p->coeffs()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
  Rational s(1, g);
  return {n * s, d * s};
}

std::string RationalFunction::to_string() const {
  auto [n, d] = integral_pair(*this);
  if (d == QPoly::constant(1)) return thue::to_string(n, "t");
  return "(" + thue::to_string(n, "t") + ")/(" + thue::to_string(d, "t") + ")";
}

}  // namespace thue::ff
