#include "thue/exact/numberfield.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "thue/exact/factor.hpp"
#include "thue/exact/linalg.hpp"

namespace thue {

std::shared_ptr<const NumberField> NumberField::make(const QPoly& m, bool trusted) {
  if (m.degree() < 1) throw ContractError("number field modulus must have degree >= 1");
  QPoly p = primitive_part(m);
  if (!trusted && !is_irreducible(p, 8)) throw ContractError("number field modulus is reducible: " + to_string(p, "x"));
  return std::shared_ptr<const NumberField>(new NumberField(std::move(p)));
}

NFElem::NFElem(FieldPtr k, QPoly residue) : k_(std::move(k)), r_(std::move(residue)) {
  if (k_ && r_.degree() >= k_->degree()) r_ = r_ % k_->modulus();
}

NFElem NFElem::generator(FieldPtr k) { return NFElem(k, QPoly::x()); }

Rational NFElem::to_rational() const {
  if (!is_rational()) throw ContractError("algebraic number is not rational");
  return r_.coeff(0);
}

void NFElem::adopt(const NFElem& o) {
  if (!o.k_) return;
  if (!k_) {
    k_ = o.k_;
    return;
  }
  if (k_ != o.k_ && k_->modulus() != o.k_->modulus())
    throw ContractError("arithmetic between elements of different number fields");
}

NFElem& NFElem::operator+=(const NFElem& o) {
  adopt(o);
  r_ += o.r_;
  return *this;
}

NFElem& NFElem::operator-=(const NFElem& o) {
  adopt(o);
  r_ -= o.r_;
  return *this;
}

NFElem& NFElem::operator*=(const NFElem& o) {
  adopt(o);
  r_ = r_ * o.r_;
  if (k_ && r_.degree() >= k_->degree()) r_ = r_ % k_->modulus();
  return *this;
}

NFElem NFElem::inverse() const {
  if (r_.is_zero()) throw ContractError("division by zero in number field");
  if (r_.degree() == 0) return NFElem(k_, QPoly::constant(1 / r_.lead()), true);
  auto eg = extended_gcd(r_, k_->modulus());
  if (eg.g.degree() != 0) throw InternalError("number field modulus not irreducible");
  return NFElem(k_, eg.s % k_->modulus(), true);
}

NFElem& NFElem::operator/=(const NFElem& o) {
  adopt(o);
  return *this *= o.inverse();
}

NFElem NFElem::pow(long e) const {
  NFElem b = e < 0 ? inverse() : *this;
  unsigned long u = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  NFElem r(k_, QPoly::constant(1), true);
  while (u) {
    if (u & 1) r *= b;
    u >>= 1;
    if (u) b *= b;
  }
  return r;
}

bool operator==(const NFElem& a, const NFElem& b) {
  if (a.k_ && b.k_ && a.k_ != b.k_ && a.k_->modulus() != b.k_->modulus()) return false;
  return a.r_ == b.r_;
}

QPoly characteristic_polynomial(const NFElem& a) {
  if (!a.field() || a.field()->degree() == 1) {
    Rational v = a.is_rational() ? a.to_rational() : NFElem(a.field(), a.residue()).to_rational();
    return QPoly{-v, Rational(1)};
  }
  const auto& k = a.field();
  const int d = k->degree();
  // Multiplication matrix in the power basis.
  Matrix<Rational> M(d, d);
  NFElem basis = NFElem(k, QPoly::constant(1));
  const NFElem x = NFElem::generator(k);
  for (int j = 0; j < d; ++j) {
    NFElem col = a * basis;
    for (int i = 0; i < d; ++i) M(i, j) = col.residue().coeff(i);
    basis *= x;
  }
  // det(yI - M) by interpolation at y = 0..d.
  std::vector<Rational> ys, vals;
  for (int y = 0; y <= d; ++y) {
    Matrix<Rational> A = M;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) A(i, j) = (i == j ? Rational(y) : Rational(0)) - M(i, j);
    ys.emplace_back(y);
    vals.push_back(determinant(A));
  }
  QPoly result;
  for (int i = 0; i <= d; ++i) {
    QPoly term = QPoly::constant(vals[i]);
    for (int j = 0; j <= d; ++j) {
      if (j == i) continue;
      term = term * QPoly{-ys[j] / (ys[i] - ys[j]), Rational(1) / (ys[i] - ys[j])};
    }
    result += term;
  }
  return result;
}

QPoly minimal_polynomial(const NFElem& a) {
  QPoly c = characteristic_polynomial(a);
  QPoly g = gcd(c, c.derivative());
  return primitive_part(c / g);
}

std::string to_string(const NFElem& a, const std::string& gen) { return to_string(a.residue(), gen); }

AlgebraicNumber AlgebraicNumber::root_of(const QPoly& minpoly, int root_index, bool trusted) {
  if (minpoly.degree() == 1) {
    QPoly p = primitive_part(minpoly);
    return rational(-p.coeff(0) / p.coeff(1));
  }
  auto k = NumberField::make(minpoly, trusted);
  if (root_index < 0 || root_index >= k->degree()) throw ContractError("root index out of range");
  return {NFElem::generator(k), root_index};
}

int AlgebraicNumber::degree() const { return minimal_polynomial(value).degree(); }

std::complex<double> AlgebraicNumber::approx() const {
  if (value.is_rational() || !value.field()) return {value.residue().coeff(0).get_d(), 0.0};
  auto boxes = value.field()->root_boxes(Rational(1, 1 << 30));
  std::complex<double> z = boxes.at(root_index).approx();
  std::complex<double> acc = 0;
  const auto& c = value.residue().coeffs();
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * z + c[i].get_d();
  return acc;
}

QPoly cyclotomic(unsigned m) {
  static std::map<unsigned, QPoly> cache;
  static std::recursive_mutex mu;
  std::lock_guard<std::recursive_mutex> lock(mu);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  QPoly p = QPoly::monomial(1, m) - QPoly::constant(1);
  for (unsigned d = 1; d < m; ++d)
    if (m % d == 0) p = p / cyclotomic(d);
  cache.emplace(m, p);
  return p;
}

std::optional<unsigned> root_of_unity_order(const NFElem& a) {
  if (is_zero(a)) return std::nullopt;
  QPoly mp = minimal_polynomial(a);
  const int d = mp.degree();
  if (mp.lead() != 1) return std::nullopt;
  for (unsigned m = 1; m <= static_cast<unsigned>(2 * d * d + 2); ++m) {
    QPoly c = cyclotomic(m);
    if (c.degree() == d && c == mp) return m;
  }
  return std::nullopt;
}

}  // namespace thue
