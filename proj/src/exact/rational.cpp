#include "thue/exact/rational.hpp"

#include <cmath>

#include "thue/errors.hpp"

namespace thue {

Integer floor_of(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil_of(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer round_of(const Rational& q) { return floor_of(q + Rational(1, 2)); }

Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

Integer factorial(unsigned long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

double log_abs(const Integer& z) {
  if (sgn(z) == 0) throw ContractError("log_abs: zero argument");
  long e = 0;
  double d = mpz_get_d_2exp(&e, z.get_mpz_t());
  return std::log(std::fabs(d)) + static_cast<double>(e) * std::log(2.0);
}

std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto bad = [&]() { return ContractError("malformed rational '" + s + "'"); };
  if (s.empty()) throw bad();
  auto slash = s.find('/');
  auto valid_int = [](const std::string& t) {
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i >= t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den)) throw bad();
  if (num[0] == '+') num = num.substr(1);
  if (den[0] == '+') den = den.substr(1);
  Integer p(num), q(den);
  if (sgn(q) == 0) throw ContractError("zero denominator in '" + s + "'");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

}  // namespace thue
