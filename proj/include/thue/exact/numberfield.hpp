#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <string>

#include "thue/exact/poly.hpp"
#include "thue/exact/roots.hpp"

namespace thue {

// Q[x]/(m) for an irreducible m, stored primitive with positive leading
// coefficient. Non-monic m is allowed: the algebra is the same.
class NumberField {
 public:
  // Irreducibility is checked up to degree 8; higher degrees must come from
  // a verified factorisation (trusted = true).
  static std::shared_ptr<const NumberField> make(const QPoly& m, bool trusted = false);

  const QPoly& modulus() const { return m_; }
  int degree() const { return m_.degree(); }
  std::vector<RootBox> root_boxes(const Rational& width) const { return isolate_roots(m_, width); }

 private:
  explicit NumberField(QPoly m) : m_(std::move(m)) {}
  QPoly m_;
};

using FieldPtr = std::shared_ptr<const NumberField>;

// Element of a number field. A null field means a rational constant, which
// combines with elements of any field.
class NFElem {
 public:
  NFElem() = default;
  NFElem(long v) : r_(QPoly::constant(Rational(v))) {}
  NFElem(const Rational& v) : r_(QPoly::constant(v)) {}
  NFElem(FieldPtr k, QPoly residue);
  static NFElem generator(FieldPtr k);

  const FieldPtr& field() const { return k_; }
  const QPoly& residue() const { return r_; }
  bool is_rational() const { return r_.degree() <= 0; }
  Rational to_rational() const;  // throws if not rational

  NFElem operator-() const { return NFElem(k_, -r_, true); }
  NFElem& operator+=(const NFElem& o);
  NFElem& operator-=(const NFElem& o);
  NFElem& operator*=(const NFElem& o);
  NFElem& operator/=(const NFElem& o);
  NFElem inverse() const;
  NFElem pow(long e) const;

  friend NFElem operator+(NFElem a, const NFElem& b) { return a += b; }
  friend NFElem operator-(NFElem a, const NFElem& b) { return a -= b; }
  friend NFElem operator*(NFElem a, const NFElem& b) { return a *= b; }
  friend NFElem operator/(NFElem a, const NFElem& b) { return a /= b; }
  friend bool operator==(const NFElem& a, const NFElem& b);
  friend bool operator!=(const NFElem& a, const NFElem& b) { return !(a == b); }

 private:
  NFElem(FieldPtr k, QPoly r, bool /*reduced*/) : k_(std::move(k)), r_(std::move(r)) {}
  void adopt(const NFElem& o);
  FieldPtr k_;
  QPoly r_;
};

inline bool is_zero(const NFElem& a) { return a.residue().is_zero(); }

// Minimal polynomial over Q: primitive, integral, positive leading coefficient.
QPoly minimal_polynomial(const NFElem& a);

// Characteristic polynomial of multiplication by a on the field, monic.
QPoly characteristic_polynomial(const NFElem& a);

std::string to_string(const NFElem& a, const std::string& gen = "a");

// A number together with a chosen complex embedding of its field: the field
// generator is the root of the modulus in box `root_index` of the canonical
// isolation order.
struct AlgebraicNumber {
  NFElem value;
  int root_index = 0;

  static AlgebraicNumber rational(const Rational& q) { return {NFElem(q), 0}; }
  // The root with index `root_index` of an irreducible polynomial.
  static AlgebraicNumber root_of(const QPoly& minpoly, int root_index, bool trusted = false);

  int degree() const;
  bool is_rational() const { return value.is_rational(); }
  std::complex<double> approx() const;
};

// Cyclotomic polynomial Phi_m.
QPoly cyclotomic(unsigned m);

// Order of a as a root of unity, or nullopt.
std::optional<unsigned> root_of_unity_order(const NFElem& a);
inline bool is_root_of_unity(const NFElem& a) { return root_of_unity_order(a).has_value(); }

}  // namespace thue
