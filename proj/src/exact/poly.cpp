#include "thue/exact/poly.hpp"

#include <sstream>

namespace thue {

Rational content(const QPoly& p) {
  if (p.is_zero()) return Rational(0);
  Integer g = 0, l = 1;
  for (const auto& c : p.coeffs()) {
    if (sgn(c) == 0) continue;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  }
  Rational r(g, l);
  r.canonicalize();
  return r;
}

QPoly primitive_part(const QPoly& p) {
  if (p.is_zero()) return p;
  Rational c = content(p);
  if (sgn(p.lead()) < 0) c = -c;
  return p * Rational(1 / c);
}

bool is_integral(const QPoly& p) {
  for (const auto& c : p.coeffs())
    if (c.get_den() != 1) return false;
  return true;
}

std::vector<Integer> integer_coefficients(const QPoly& p) {
  if (!is_integral(p)) throw ContractError("polynomial has non-integral coefficients");
  std::vector<Integer> r;
  r.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) r.push_back(c.get_num());
  return r;
}

bool is_squarefree(const QPoly& p) {
  if (p.degree() <= 0) return !p.is_zero();
  return gcd(p, p.derivative()).degree() == 0;
}

std::vector<std::pair<QPoly, int>> squarefree_decomposition(const QPoly& p) {
  std::vector<std::pair<QPoly, int>> out;
  if (p.degree() <= 0) return out;
  QPoly a = p.monic();
  QPoly b = a.derivative();
  QPoly c = gcd(a, b);
  QPoly w = a / c;
  QPoly y = b / c;
  QPoly z = y - w.derivative();
  int k = 1;
  while (w.degree() > 0) {
    QPoly g = gcd(w, z);
    if (g.degree() > 0) out.emplace_back(primitive_part(g), k);
    w = w / g;
    y = z / g;
    z = y - w.derivative();
    ++k;
  }
  return out;
}

std::string to_string(const QPoly& p, const std::string& var) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = p.degree(); i >= 0; --i) {
    const Rational& c = p.coeffs()[i];
    if (sgn(c) == 0) continue;
    Rational a = abs(c);
    if (sgn(c) < 0)
      os << "-";
    else if (!first)
      os << "+";
    first = false;
    bool unit = (a == 1);
    if (i == 0) {
      os << to_string(a);
      continue;
    }
    if (!unit) os << to_string(a) << "*";
    os << var;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

}  // namespace thue
