#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "thue/siegelwron/siegelwron.hpp"

namespace thue::descent {

using ff::RationalFunction;
using siegel::IndexSet;

// Inclusion-minimal proper nonempty subsets with zero sum. Values must be
// nonzero and share one number field.
std::vector<IndexSet> vanishing_subsum_check(std::span<const NFElem> values);
std::vector<IndexSet> vanishing_subsum_check(std::span<const AlgebraicNumber> values);

struct DescentConfig {
  long K = 10;
  bool height_cap = false;  // impose h(A_i) <= nK on the auxiliary tuples
  bool wronskian_bases = true;
  std::optional<Rational> q0;
  long max_N = 4096;
};

struct Stage {
  long N = 0;
  IndexSet lambda;
  IndexSet J;                  // J_j, chosen before the search
  std::vector<long> budgets;   // effective budgets at N (-1: A_i = 0)
  std::vector<int> phi;        // phi_j, values in 1..j
  siegel::AuxiliaryTuple tuple;
  long t = 0;
  std::size_t span_dim = 0;  // dim(V_1 + ... + V_j)
  std::vector<Vec<NFElem>> ortho;  // ortho_basis(Lambda_j, w)
  std::optional<siegel::WronskianCertificate> cert;
  long claim_iv_lhs = 0;
  long claim_iv_slack = 0;   // claim_iv_lhs - nd
  double basis_height_excess = 0;  // max_i h(v_i) - N_j h(P), when heights are exact
};

struct DescentState {
  std::vector<RationalFunction> fs;
  unsigned n = 0;
  std::size_t r = 0;
  long d = 0;
  Rational q0;
  AlgebraicNumber P;
  Vec<NFElem> w;  // f_i(P)^n
  std::vector<Stage> stages;

  std::size_t s() const { return stages.size(); }
  // Descriptions of every violated invariant; empty when the state is valid.
  std::vector<std::string> violations() const;
  std::string report() const;
};

// The P-independent part: N_j, Lambda_j, J_j, phi_j and the auxiliary tuples.
DescentState build_skeleton(std::span<const RationalFunction> fs, unsigned n, const DescentConfig& cfg = {});
// Fills w, t_j, the orthogonal spaces and (optionally) the Wronskian bases at P.
DescentState specialize(const DescentState& skeleton, const AlgebraicNumber& P, const DescentConfig& cfg = {});
DescentState run_claim_construction(std::span<const RationalFunction> fs, unsigned n, const AlgebraicNumber& P,
                                    const DescentConfig& cfg = {});

struct Inequality {
  Rational lambda;      // sum_{j<s} t_j N_j/n + (t_s - 1) N_s/n - d
  Rational tau;         // max(d, sum_j t_j N_j / n)
  Rational tau_slack;   // tau - d
  siegel::ConvexBound convex;
  Rational lambda_bound;  // -tau/(r-1) + tau_slack
  Rational margin;        // lambda_bound - lambda
  bool holds = false;
};

// alpha must lie in w-perp and outside V_1 + ... + V_{s-1}.
Inequality assemble_inequality(const DescentState& state, const Vec<NFElem>& alpha);

enum class Classification { certified, excluded_point, vanishing_subsum };
std::string to_string(Classification c);

struct CertifierReport {
  std::string family_id;
  std::vector<RationalFunction> fs;
  std::vector<Rational> alpha;
  unsigned n = 0;
  AlgebraicNumber P;
  QPoly point_minpoly;
  Classification classification = Classification::certified;
  std::vector<IndexSet> vanishing_subsets;
  HeightValue hP;
  HeightValue h_alpha;
  double bound = 0;  // r h(alpha)/n
  double C = 0;
  double margin = 0;  // bound + C - h(P)
  std::optional<Inequality> inequality;

  static std::string csv_header();
  std::string csv_row() const;
};

// Throws ContractError when sum alpha_i f_i^n vanishes identically or the
// equation fails at P. A skeleton for (fs, n) may be passed to skip the search.
CertifierReport certify_solution(std::span<const RationalFunction> fs, std::span<const Rational> alpha, unsigned n,
                                 const AlgebraicNumber& P, double C = 0, const DescentState* skeleton = nullptr);

// Smallest C with h(P) <= bound + C over the certified reports.
double fit_constant(std::span<const CertifierReport> reports);

}  // namespace thue::descent
