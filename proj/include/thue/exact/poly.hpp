#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "thue/errors.hpp"
#include "thue/exact/rational.hpp"

namespace thue {

namespace detail {
// Found by argument-dependent lookup, so coefficient types declared later
// (number field elements, rational functions) work too.
template <class K>
bool coeff_is_zero(const K& x) {
  return is_zero(x);
}
}  // namespace detail

// Dense univariate polynomial over a field K, coefficients stored low degree
// first and trimmed so that the leading coefficient is nonzero. K must provide
// field arithmetic, construction from int and a free is_zero(const K&).
template <class K>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<K> c) : c_(std::move(c)) { trim(); }
  Poly(std::initializer_list<K> c) : c_(c) { trim(); }

  static Poly constant(const K& c) { return Poly(std::vector<K>{c}); }
  static Poly monomial(const K& c, std::size_t deg) {
    std::vector<K> v(deg + 1, K(0));
    v[deg] = c;
    return Poly(std::move(v));
  }
  static Poly x() { return monomial(K(1), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<K>& coeffs() const { return c_; }
  K coeff(std::size_t i) const { return i < c_.size() ? c_[i] : K(0); }
  const K& lead() const {
    if (c_.empty()) throw ContractError("leading coefficient of zero polynomial");
    return c_.back();
  }
  K constant_term() const { return coeff(0); }

  Poly operator-() const {
    Poly r = *this;
    for (auto& a : r.c_) a = -a;
    return r;
  }
  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), K(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), K(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly& operator*=(const K& s) {
    if (detail::coeff_is_zero(s)) {
      c_.clear();
      return *this;
    }
    for (auto& a : c_) a *= s;
    trim();
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<K> r(a.c_.size() + b.c_.size() - 1, K(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (detail::coeff_is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(r));
  }
  friend Poly operator*(Poly a, const K& s) { return a *= s; }
  friend Poly operator*(const K& s, Poly a) { return a *= s; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  // Euclidean division: *this = q * d + r with deg r < deg d.
  std::pair<Poly, Poly> divmod(const Poly& d) const {
    if (d.is_zero()) throw ContractError("polynomial division by zero");
    std::vector<K> r = c_;
    if (c_.size() < d.c_.size()) return {Poly(), *this};
    std::vector<K> q(c_.size() - d.c_.size() + 1, K(0));
    K inv = K(1) / d.lead();
    for (std::size_t k = q.size(); k-- > 0;) {
      K coef = r[k + d.c_.size() - 1] * inv;
      q[k] = coef;
      if (detail::coeff_is_zero(coef)) continue;
      for (std::size_t j = 0; j < d.c_.size(); ++j) r[k + j] -= coef * d.c_[j];
    }
    r.resize(d.c_.size() - 1);
    return {Poly(std::move(q)), Poly(std::move(r))};
  }
  friend Poly operator/(const Poly& a, const Poly& b) { return a.divmod(b).first; }
  friend Poly operator%(const Poly& a, const Poly& b) { return a.divmod(b).second; }
  bool divides(const Poly& a) const { return (a % *this).is_zero(); }

  Poly monic() const {
    if (is_zero()) return *this;
    return *this * (K(1) / lead());
  }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<K> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * K(static_cast<long>(i));
    return Poly(std::move(r));
  }

  // Horner evaluation in any algebra V that accepts K coefficients.
  template <class V>
  V eval(const V& x) const {
    V acc = V(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + V(c_[i]);
    return acc;
  }
  K operator()(const K& x) const { return eval<K>(x); }

  Poly pow(unsigned long e) const {
    Poly r = constant(K(1)), b = *this;
    while (e) {
      if (e & 1) r = r * b;
      e >>= 1;
      if (e) b = b * b;
    }
    return r;
  }

  // p(q(x)).
  Poly compose(const Poly& q) const {
    Poly r;
    for (std::size_t i = c_.size(); i-- > 0;) r = r * q + constant(c_[i]);
    return r;
  }

  // Coefficients of p(x + a), i.e. the Taylor expansion at a, over an
  // extension V of K.
  template <class V>
  std::vector<V> taylor_coefficients(const V& a) const {
    std::vector<V> r(c_.begin(), c_.end());
    const std::size_t n = r.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (std::size_t j = n - 1; j-- > i;) r[j] += a * r[j + 1];
    return r;
  }

 private:
  void trim() {
    while (!c_.empty() && detail::coeff_is_zero(c_.back())) c_.pop_back();
  }
  std::vector<K> c_;
};

template <class K>
Poly<K> gcd(Poly<K> a, Poly<K> b) {
  while (!b.is_zero()) {
    Poly<K> r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

// Returns (g, s, t) with s*a + t*b = g monic.
template <class K>
struct ExtendedGcd {
  Poly<K> g, s, t;
};

template <class K>
ExtendedGcd<K> extended_gcd(const Poly<K>& a, const Poly<K>& b) {
  Poly<K> r0 = a, r1 = b;
  Poly<K> s0 = Poly<K>::constant(K(1)), s1;
  Poly<K> t0, t1 = Poly<K>::constant(K(1));
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly<K> s2 = s0 - q * s1, t2 = t0 - q * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  K inv = K(1) / r0.lead();
  return {r0 * inv, s0 * inv, t0 * inv};
}

// Resultant by the Euclidean recurrence. Both zero is a domain error; a zero
// argument against a non-constant one gives 0, against a nonzero constant 1.
template <class K>
K resultant(const Poly<K>& a, const Poly<K>& b) {
  if (a.is_zero() && b.is_zero()) throw ContractError("resultant of two zero polynomials");
  if (a.is_zero()) return b.degree() == 0 ? K(1) : K(0);
  if (b.is_zero()) return a.degree() == 0 ? K(1) : K(0);
  Poly<K> A = a, B = b;
  K acc(1);
  while (true) {
    const int m = A.degree(), n = B.degree();
    if (n == 0) {
      K p(1);
      for (int i = 0; i < m; ++i) p *= B.lead();
      return acc * p;
    }
    Poly<K> R = A % B;
    if (R.is_zero()) return K(0);
    if ((m * n) % 2 != 0) acc = -acc;
    for (int i = 0; i < m - R.degree(); ++i) acc *= B.lead();
    A = std::move(B);
    B = std::move(R);
  }
}

using QPoly = Poly<Rational>;

// Integer-coefficient helpers for QPoly.
Rational content(const QPoly& p);              // positive; p / content is primitive integral
QPoly primitive_part(const QPoly& p);          // integral, content 1, positive leading coeff
std::vector<Integer> integer_coefficients(const QPoly& p);  // requires integral p
bool is_integral(const QPoly& p);
bool is_squarefree(const QPoly& p);

// Yun's squarefree decomposition: p = c * prod s_k^k, s_k pairwise coprime,
// squarefree, primitive. Entries with s_k = 1 are omitted.
std::vector<std::pair<QPoly, int>> squarefree_decomposition(const QPoly& p);

// Canonical text in variable `var`, e.g. "3*t^2-t+1/2". Zero prints "0".
std::string to_string(const QPoly& p, const std::string& var = "t");

}  // namespace thue
