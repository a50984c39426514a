#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "thue/descent/descent.hpp"
#include "thue/funcfield/expr.hpp"
#include "thue/reduction/reduction.hpp"

namespace thue::harness {

using ff::RationalFunction;

// Point height bound: either log(B) for an integer B (exact) or a real log bound.
struct HeightBound {
  long B = 1;  // max(|p|, |q|) or coefficient bound, floor(exp(H))
  static HeightBound log_of(long B) { return {B}; }
  static HeightBound from_log(double H);
  double log_value() const;
};

// Degree 1: p/q with max(|p|, q) <= B, sorted by height then value.
// Degree 2: both roots of every irreducible primitive a x^2 + b x + c, a > 0,
// with max(|a|, |b|, |c|) <= B, in coefficient order (a, b, c), then root index.
std::vector<AlgebraicNumber> enumerate_points(HeightBound H, int degree);

struct SolutionFactor {
  QPoly poly;  // irreducible, primitive, positive leading coefficient
  int multiplicity = 1;
  bool excluded = false;  // roots are zeros or poles of some f_i
  bool evaluated = true;  // degree <= 2
  bool proven_irreducible = true;
};

struct PowerEquation {
  QPoly cleared;  // numerator of sum alpha_i f_i^n
  std::vector<SolutionFactor> factors;
};

// Throws ContractError("identical-relation") when the sum vanishes identically.
PowerEquation solve_power_equation(std::span<const RationalFunction> fs, std::span<const Rational> alpha, unsigned n);

// Terms whose f_i are proportional are merged into one: c^n alpha_i is added to
// the coefficient of the representative; zero coefficients are dropped.
void merge_proportional(std::vector<RationalFunction>& fs, std::vector<Rational>& alpha, unsigned n);

enum class RowClass { certified, excluded_point, vanishing_subsum, identical_relation };
std::string to_string(RowClass c);

struct ResultRow {
  std::string family;
  unsigned n = 0;
  std::vector<Rational> alpha;
  double alpha_height = 0;
  QPoly minpoly;  // zero for identical relations
  int multiplicity = 0;
  HeightValue height;
  double bound = 0;  // r h(alpha) / n
  double margin = 0;  // bound + C - h(P)
  RowClass classification = RowClass::certified;
  std::string detail;  // vanishing subsets, or the inequality margin

  static std::string csv_header();
  std::string csv_row() const;
};

// Stable sort by (family, n, alpha, degree, minimal polynomial).
void sort_rows(std::vector<ResultRow>& rows);
std::string to_csv(const std::vector<ResultRow>& rows);

struct SolveOptions {
  double C = 0;
};

// Solves one equation and certifies one root of every irreducible factor;
// conjugate roots share the classification and the height.
std::vector<ResultRow> solve_and_certify(const std::string& family, std::span<const RationalFunction> fs,
                                         std::span<const Rational> alpha, unsigned n, const SolveOptions& opt = {},
                                         const descent::DescentState* skeleton = nullptr);

// Largest h(P) - bound over certified rows, at least 0.
double fitted_constant(std::span<const ResultRow> rows);

// 12 significant digits; values within 1e-12 of zero print as 0.
std::string format_number(double x);

struct Range {
  unsigned lo = 1, hi = 1;
};
// "a..b" or "a".
Range parse_range(const std::string& text);

struct SuiteReport {
  std::vector<ResultRow> rows;
  std::vector<std::string> notes;  // one line per summary fact
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
  std::string summary() const;
};

// alpha = (a, b, -c) for a t^n + b (1-t)^n = c.
std::vector<std::vector<Rational>> random_beukers_alphas(std::size_t count, long height_bound, std::uint64_t seed);

SuiteReport beukers_suite(const std::vector<std::vector<Rational>>& alphas, Range n, const SolveOptions& opt = {});
SuiteReport denz_suite(Range n, HeightBound H);
SuiteReport amzex_suite(unsigned box, HeightBound H);

struct ThueReport {
  std::vector<std::pair<unsigned, std::string>> conjugate_sums;  // (n, element or "0")
  std::vector<std::tuple<long, long, long>> solutions;  // (t, x, y)
  std::vector<std::string> failures;
  std::string text() const;
};

ThueReport thue_suite(Range n, long t_box, long y_box);

struct RecurrenceSpec {
  std::vector<QPoly> c;   // c_1..c_r
  std::vector<QPoly> u0;  // u_0..u_{r-1}
  void validate() const;  // throws on a non-squarefree characteristic polynomial
};

RecurrenceSpec chebyshev();
std::vector<QPoly> recurrence_terms(const RecurrenceSpec& spec, unsigned count);

struct RecurrenceZero {
  unsigned n = 0;
  QPoly minpoly;
  int multiplicity = 1;
  HeightValue height;
};

struct RecurrenceReport {
  std::vector<RecurrenceZero> zeros;
  std::vector<std::string> lines;
  std::string text() const;
};

RecurrenceReport recurrence_suite(const RecurrenceSpec& spec, Range n, int degree_bound);
// T_q | T_{mq} by exact division in Q[t].
bool chebyshev_divides(unsigned q, unsigned m);

// V is an expression in x1..xr.
struct UnlikelyRow {
  unsigned n = 0;
  AlgebraicNumber P;
  QPoly minpoly;
  HeightValue height;
};

struct UnlikelyReport {
  std::vector<unsigned> contained;  // n with [n]C inside V
  std::vector<UnlikelyRow> rows;
  std::string text() const;
  std::string to_csv() const;
};

UnlikelyReport unlikely_scan(std::span<const RationalFunction> g, const ff::Expr& V, Range n, HeightBound H,
                             int degree);
// Direct check of V(g(P)^n) = 0 at a point off the poles and zeros of the g_i.
bool on_unlikely_locus(std::span<const RationalFunction> g, const ff::Expr& V, unsigned n, const AlgebraicNumber& P);

}  // namespace thue::harness
