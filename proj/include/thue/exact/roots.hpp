#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "thue/exact/poly.hpp"

namespace thue {

// Axis-aligned box in C with rational corners containing exactly one root.
// Real roots get a degenerate imaginary side [0, 0].
struct RootBox {
  Rational re_lo, re_hi, im_lo, im_hi;
  bool real = false;

  Rational width() const;
  Rational re_mid() const { return (re_lo + re_hi) / 2; }
  Rational im_mid() const { return (im_lo + im_hi) / 2; }
  bool intersects(const RootBox& o) const;
  std::complex<double> approx() const { return {re_mid().get_d(), im_mid().get_d()}; }
};

// Certified isolation of all complex roots of a squarefree polynomial. Each
// box has width <= `width` and contains exactly one root; boxes are pairwise
// disjoint. Ordered by (real centre, imaginary centre). Approximations come
// from Aberth iterations at doubling dyadic precision; inclusion and
// uniqueness follow from disjointness of the discs of radius deg*|W_i|
// around the approximations (W_i the Weierstrass correction), evaluated in
// exact rational arithmetic.
std::vector<RootBox> isolate_roots(const QPoly& p, const Rational& width);

// Shrinks boxes to `width`, each new box a subset of the old box it refines.
std::vector<RootBox> refine_roots(const QPoly& p, const std::vector<RootBox>& boxes, const Rational& width);

// Outward-rounded bounds on |z| over the box.
std::pair<double, double> modulus_bounds(const RootBox& b);

// Exact sign of p at a rational point.
int sign_at(const QPoly& p, const Rational& x);

}  // namespace thue
