#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace thue {

using Integer = mpz_class;
using Rational = mpq_class;

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_zero(const Integer& z) { return sgn(z) == 0; }

Integer floor_of(const Rational& q);
Integer ceil_of(const Rational& q);
// Nearest integer, halves rounded up: floor(q + 1/2).
Integer round_of(const Rational& q);

Integer binomial(unsigned long n, unsigned long k);
Integer factorial(unsigned long n);

// Natural log of |z| for z != 0, accurate to a few ulps.
double log_abs(const Integer& z);

std::string to_string(const Integer& z);
std::string to_string(const Rational& q);

// Accepts "p", "-p", "p/q". Throws ContractError on malformed input or q == 0.
Rational parse_rational(std::string_view text);

}  // namespace thue
