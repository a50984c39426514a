#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "thue/exact/linalg.hpp"
#include "thue/funcfield/funcfield.hpp"

namespace thue::reduction {

using ff::RationalFunction;

// A root-of-unity vector given by angles k/m, coordinate i = exp(2 pi i angle_i).
using TorsionVector = std::vector<Rational>;

struct SubgroupPresentation {
  std::size_t r = 0;
  std::vector<std::vector<RationalFunction>> generators;  // kappa vectors of length r
  std::vector<TorsionVector> torsion;

  std::size_t kappa() const { return generators.size(); }
  void validate() const;  // throws ContractError
};

struct ConstantFreeWitness {
  std::vector<long> e;       // character
  Vec<Integer> lambda;       // relation among the h_j with constant product
  Rational constant;
};

struct ConstantFreeVerdict {
  bool constant_free = true;  // within the box
  long box = 0;
  std::size_t characters_checked = 0;
  std::optional<ConstantFreeWitness> witness;
  std::string describe() const;
};

// Scans primitive characters with sup-norm <= box in order of sup-norm, then
// lexicographically; refutation-sound only.
ConstantFreeVerdict is_constant_free(const SubgroupPresentation& gamma, long box = 5);

// h_j = prod_i g_{j,i}^{e_i}.
std::vector<RationalFunction> character_image(const SubgroupPresentation& gamma, std::span<const long> e);

struct DirichletResult {
  std::vector<Integer> lambda;
  Integer A;
  long Q = 0;
  Integer q;
  std::vector<Integer> p;
  Integer n;
  std::vector<Integer> rem;
};

DirichletResult dirichlet_approx(std::span<const Integer> lambda, long Q);

struct Decomposition {
  DirichletResult approx;
  std::vector<RationalFunction> f;    // prod g_j^{p_j}
  std::vector<RationalFunction> rho;  // prod g_j^{rem_j}
  TorsionVector omega;
  std::vector<RationalFunction> theta;
  // alpha_i = omega_i theta_i(P) rho_i(P)
  std::vector<RationalFunction> alpha_functions() const;
  // Exact alpha at P; needs either a rational P or omega in {+-1}.
  Vec<NFElem> alpha_at(const AlgebraicNumber& P) const;
  unsigned long n() const { return approx.n.get_ui(); }
};

Decomposition decompose(const SubgroupPresentation& gamma, std::span<const Integer> lambda, const TorsionVector& omega,
                        std::span<const RationalFunction> theta, long Q);

// gamma as an element: omega * prod g_j^{lambda_j}.
std::vector<RationalFunction> element(const SubgroupPresentation& gamma, std::span<const Integer> lambda);

struct NormalizedInstance {
  SubgroupPresentation gamma;        // ratio presentation, first coordinate 1
  std::vector<RationalFunction> element;  // gamma / gamma_1
  std::vector<RationalFunction> theta;
};

NormalizedInstance normalize_to_first_coordinate(const SubgroupPresentation& gamma,
                                                 std::span<const RationalFunction> element,
                                                 std::span<const RationalFunction> theta);

// exp(2 pi i angle) in Q(zeta_m) for m the denominator of the angle.
NFElem root_of_unity(const Rational& angle);

}  // namespace thue::reduction
