#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "thue/exact/numberfield.hpp"
#include "thue/funcfield/funcfield.hpp"

namespace thue {

// log(q) / k for a positive rational q and k >= 1; compared exactly.
struct LogValue {
  Rational q = 1;
  unsigned long k = 1;

  double approx() const;
  LogValue operator-() const;
  // Exact sign of this - o.
  friend int compare(const LogValue& a, const LogValue& b);
  friend bool operator<=(const LogValue& a, const LogValue& b) { return compare(a, b) <= 0; }
  friend bool operator==(const LogValue& a, const LogValue& b) { return compare(a, b) == 0; }
  // |log(q)/k| <= log(bound)
  bool abs_at_most_log(const Rational& bound) const;
};

LogValue log_of(const Rational& q, unsigned long k = 1);

struct HeightValue {
  double lo = 0, hi = 0;
  std::optional<LogValue> exact;

  double mid() const { return (lo + hi) / 2; }
  double width() const { return hi - lo; }
  static HeightValue of(const LogValue& v);
};

HeightValue height_rational(const Rational& x);
// (1/deg) log M(m) for an irreducible integral m; width <= tol.
HeightValue height_of_minpoly(const QPoly& m, double tol = 1e-9);
HeightValue height_algebraic(const AlgebraicNumber& a, double tol = 1e-9);
HeightValue height_algebraic(const NFElem& a, double tol = 1e-9);
HeightValue projective_height(std::span<const Rational> xs);
HeightValue affine_height(std::span<const Rational> xs);

// F(X, Y) = A(X) - Y B(X) for f = A/B, integral with content 1.
struct PlaneModel {
  QPoly A, B;
  std::vector<Rational> coefficients() const;
};
PlaneModel plane_model(const ff::RationalFunction& f);
HeightValue height_function(const ff::RationalFunction& f);

// h(f_1(P):...:f_r(P)) - d h(P) for rational P; exact.
LogValue height_machine_residual(std::span<const ff::RationalFunction> fs, const Rational& P);

// h(delta_0 f(P)^{a_0} ... delta_l f(P)^{a_l}).
HeightValue eisenstein_monomial_height(const ff::Jet& jet, std::span<const unsigned> a, unsigned L);

struct CalibrationSpec {
  std::uint64_t seed = 1;
  int samples = 40;
  int max_degree = 3;
  int coeff_range = 9;
  long height_bound = 20;  // rational points with max(|p|, q) <= height_bound
  unsigned max_n = 6;
  unsigned max_L = 6;
  std::string describe() const;
};

struct ResidualRow {
  std::string sample_id;
  double lhs = 0, rhs = 0, residual = 0, fitted_c = 0;
};

struct ResidualReport {
  std::string lemma;
  std::string sample_spec;
  std::vector<ResidualRow> rows;
  double fitted_c = 0;
  double max_residual = 0;
  std::string to_csv() const;
};

const std::vector<std::string>& calibration_lemmas();
ResidualReport calibrate(const std::string& lemma, const CalibrationSpec& spec = {});

// Rationals p/q in lowest terms with max(|p|, q) <= H, sorted by height then value.
std::vector<Rational> rationals_up_to(long H);

}  // namespace thue
