#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "thue/exact/linalg.hpp"
#include "thue/funcfield/rational_function.hpp"

namespace thue::ff {

// A place of Q(t): an irreducible primitive integral polynomial (positive
// leading coefficient) or the place at infinity.
class Place {
 public:
  static Place infinity() { return Place(); }
  static Place at(const Rational& q);
  // The place of the algebraic point P (its minimal polynomial in t).
  static Place of(const AlgebraicNumber& p);
  // Caller guarantees irreducibility (e.g. a factor from thue::factor).
  static Place finite(const QPoly& irreducible);

  bool is_infinite() const { return infinite_; }
  const QPoly& poly() const { return poly_; }
  int degree() const { return infinite_ ? 1 : poly_.degree(); }
  std::optional<Rational> rational_point() const;
  std::string to_string() const;

  friend bool operator<(const Place& a, const Place& b);
  friend bool operator==(const Place& a, const Place& b) {
    return a.infinite_ == b.infinite_ && a.poly_ == b.poly_;
  }

 private:
  Place() = default;
  bool infinite_ = true;
  QPoly poly_;
};

using Divisor = std::map<Place, long>;

long degree(const Divisor& d);

long order_at(const RationalFunction& f, const Place& v);
Divisor divisor(const RationalFunction& f);

struct JointDivisor {
  Divisor divisor;  // min_j ord_v(f_j) over the joint support
  long degree = 0;
  long d = 0;       // -degree
};
JointDivisor joint_divisor(std::span<const RationalFunction> fs);

RationalFunction divided_derivative(const RationalFunction& f, unsigned l);

struct FaaDiBrunoTerm {
  std::vector<unsigned> a;  // (a_0, ..., a_l)
  Integer coefficient;      // C(a)
  RationalFunction monomial;  // prod_k (delta_k f)^{a_k}
};

struct FaaDiBrunoExpansion {
  std::vector<FaaDiBrunoTerm> terms;
  RationalFunction prefactor;  // f^{n-l}
  RationalFunction sum;        // prefactor * sum_a C(a) monomial(a)
  Integer coefficient_total;   // sum_a C(a)
};

FaaDiBrunoExpansion faa_di_bruno_power(const RationalFunction& f, unsigned n, unsigned l);

// det(delta_j F_i), i, j = 0..k-1.
RationalFunction wronskian(std::span<const RationalFunction> Fs);
// det(delta_{rho_j} F_i).
RationalFunction generalized_wronskian(std::span<const RationalFunction> Fs, std::span<const unsigned> rho);

// {(t - q0)^{-k} : k = 0..N} for a rational place Q = q0.
std::vector<RationalFunction> riemann_roch_basis(unsigned N, const Place& Q);

// Genus-0 instance of the good basis: Delta = 1, g0 = 1, g = 1/(t - q0).
struct GoodBasis {
  unsigned delta = 1;
  RationalFunction g;
  std::vector<RationalFunction> g_j;
  std::vector<long> pole_orders;
};
GoodBasis good_basis(const Place& Q);

struct Jet {
  AlgebraicNumber point;
  std::vector<NFElem> values;  // delta_l f(P), l = 0..L
};
Jet jet_at(const RationalFunction& f, const AlgebraicNumber& P, unsigned L);

// Taylor coefficients of f at P up to order L, over the field of P.
std::vector<NFElem> taylor_at(const RationalFunction& f, const NFElem& P, unsigned L);

struct SupportSet {
  std::vector<Place> s0;  // zeros and poles of the f_i, and infinity
  Place q = Place::infinity();
  bool contains(const Place& v) const;
};

// Smallest non-negative integer that is neither a zero nor a pole of any f_i.
Rational default_base_point(std::span<const RationalFunction> fs);
SupportSet support_set(std::span<const RationalFunction> fs, std::optional<Rational> q0 = std::nullopt);

// Coefficient matrix of polynomials (rows = polynomials, columns = powers).
Matrix<Rational> coefficient_matrix(std::span<const RationalFunction> polys);

}  // namespace thue::ff
