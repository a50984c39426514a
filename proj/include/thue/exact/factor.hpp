#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "thue/exact/poly.hpp"

namespace thue {

struct Factor {
  QPoly poly;  // primitive, integral, positive leading coefficient
  int multiplicity = 1;
  bool proven_irreducible = true;
};

struct Factorization {
  Rational unit;  // p = unit * prod factor^multiplicity
  std::vector<Factor> factors;
  bool complete() const;
};

// Factorisation over Q. Squarefree parts are split by matching conjugate-closed
// sets of certified root boxes against integer coefficient intervals, with
// the admissible factor degrees pruned by distinct-degree factorisation modulo
// several primes. Every reported factor is verified by exact division. A part
// whose recombination search exceeds the work cap is returned with
// proven_irreducible = false. Factors are sorted by (degree, coefficients).
Factorization factor(const QPoly& p);

// Irreducibility over Q; throws ContractError above `degree_cap`.
bool is_irreducible(const QPoly& p, int degree_cap = 8);

// Degrees d such that a factor of degree d of a squarefree primitive p is not
// ruled out by the factorisation patterns of p modulo small primes.
std::set<int> admissible_factor_degrees(const QPoly& p, int primes = 8);

// Distinct-degree factorisation pattern of p mod prime: degree -> count.
std::vector<std::pair<int, int>> ddf_pattern_mod(const QPoly& p, std::uint64_t prime);

}  // namespace thue
