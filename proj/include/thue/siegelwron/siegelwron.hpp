#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "thue/exact/linalg.hpp"
#include "thue/funcfield/funcfield.hpp"
#include "thue/heights/heights.hpp"

namespace thue::siegel {

using ff::RationalFunction;
using IndexSet = std::vector<int>;  // sorted, 0-based

// Unknowns: A_i = p_i(t) / (t - q0)^{M_i} with deg p_i <= M_i; the columns are
// the coefficients of the p_i in the monomial basis. M_i = -1 forces A_i = 0.
struct SiegelInstance {
  std::vector<RationalFunction> fs;
  unsigned n = 0;
  std::vector<long> Ms;
  Rational q0;
  long S = 0, M = 0, d = 0, T = 0;  // T = M + d n
  Rational c0 = 1;
  std::optional<Rational> rho;  // Dirichlet exponent when S > M + dn + c0
  std::vector<std::pair<int, int>> columns;  // (i, power of t in p_i)
  Matrix<Rational> system;      // coefficient matching after clearing denominators
  Matrix<Rational> jet_system;  // delta_l(x^M phi / f_ref^n)(Q) = 0, l = 0..T

  std::size_t unknowns() const { return columns.size(); }
  std::vector<RationalFunction> assemble(const Vec<Rational>& alpha) const;
};

SiegelInstance build_instance(std::span<const RationalFunction> fs, unsigned n, std::span<const long> Ms,
                              const Rational& q0, bool with_jet_system = true);

// Nullity of the coefficient-matching system.
std::size_t kernel_dimension(const SiegelInstance& inst);
// The two system constructions have equal kernels.
bool kernels_agree(const SiegelInstance& inst);

struct AuxiliaryTuple {
  std::vector<RationalFunction> A;  // size r; zero outside the support
  Vec<Integer> alpha;               // primitive integer unknown vector
  HeightValue height;               // projective height of alpha
  std::vector<HeightValue> function_heights;
  IndexSet support;
  bool verified = false;  // sum A_i f_i^n == 0 re-expanded symbolically
};

AuxiliaryTuple small_solution(const SiegelInstance& inst);

// Per-index budget: a frozen value (A_i in L(bQ), -1 meaning A_i = 0) or the
// searched budget N.
struct Budget {
  bool searched = true;
  long frozen = 0;
  static Budget search() { return {}; }
  static Budget fixed(long b) { return {false, b}; }
};

struct VanishingConfig {
  std::optional<double> height_cap;  // discard tuples with some h(A_i) above the cap
  long max_N = 4096;
};

struct VanishingResult {
  long N = 0;
  IndexSet lambda;
  AuxiliaryTuple tuple;
  std::vector<long> budgets;  // effective budgets at N (over all r indices)
  bool trivial_below = true;  // kernel trivial at N - 1 (checked when N > 0)
  std::size_t rank_queries = 0;
};

VanishingResult minimal_vanishing_order(std::span<const RationalFunction> fs, unsigned n,
                                        std::span<const Budget> constraints, const Rational& q0,
                                        const VanishingConfig& cfg = {});

std::vector<IndexSet> connected_components(const std::vector<IndexSet>& sets);

struct OrthoSpace {
  std::size_t r = 0;
  Vec<NFElem> w;
  IndexSet lambda;
  std::vector<Vec<NFElem>> basis;
};

OrthoSpace ortho_basis(const IndexSet& lambda, const Vec<NFElem>& w);
// dim of the span of a list of vectors.
std::size_t span_dimension(const std::vector<Vec<NFElem>>& vs);

struct WronskianCertificate {
  IndexSet lambda;
  std::vector<Rational> a;  // minimal relation, a_1 = 1
  RationalFunction Ws;
  long m0 = 0;
  long theta = 0;
  long e = 0;
  std::vector<unsigned> rho;
  std::size_t rho_tried = 0;
  Matrix<NFElem> B;  // |Lambda| x (|Lambda| - 1) values at P
  std::vector<Vec<NFElem>> basis;  // in ambient coordinates
  std::vector<std::optional<HeightValue>> heights;
  Vec<NFElem> w;
  bool ws_relations_verified = false;
  std::string report(const std::vector<RationalFunction>& fs, unsigned n) const;
};

// Ms are the budgets M'_i (i in Lambda) used for Theta.
WronskianCertificate wronskian_basis(const IndexSet& lambda, std::span<const RationalFunction> As,
                                     std::span<const RationalFunction> fs, unsigned n, const AlgebraicNumber& P,
                                     std::span<const long> Ms);

// Coefficients (a_i) with a_1 = 1 of the minimal linear relation among Fs.
// Throws ContractError when the relation is not minimal.
std::vector<Rational> minimal_relation(std::span<const RationalFunction> Fs);

struct ConvexBound {
  Rational lhs;    // sum_{j<s} a_j x_j + (a_s - 1) x_s - tau
  Rational bound;  // -tau / rho
  Rational slack;  // lhs - bound, <= 0
  bool holds = false;
};

ConvexBound convex_bound(std::span<const Rational> a, std::span<const Rational> x, const Rational& tau,
                         const Rational& rho);

std::string format_set(const IndexSet& s);  // 1-based, "{1,2}"

}  // namespace thue::siegel
