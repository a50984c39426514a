#include <random>

#include "doctest.h"
#include "thue/exact/factor.hpp"
#include "thue/exact/linalg.hpp"
#include "thue/exact/numberfield.hpp"
#include "thue/exact/roots.hpp"

using namespace thue;

namespace {

QPoly P(std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  return QPoly(v);
}

// Sylvester-matrix determinant: independent route to the resultant.
Rational sylvester_resultant(const QPoly& a, const QPoly& b) {
  const int m = a.degree(), n = b.degree();
  Matrix<Rational> S(m + n, m + n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) S(i, i + j) = a.coeff(m - j);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) S(n + i, i + j) = b.coeff(n - j);
  return determinant(S);
}

QPoly random_poly(std::mt19937& rng, int maxdeg, int range) {
  std::uniform_int_distribution<int> deg(1, maxdeg), co(-range, range);
  int d = deg(rng);
  std::vector<Rational> c(d + 1);
  for (auto& x : c) x = co(rng);
  if (c[d] == 0) c[d] = 1;
  return QPoly(c);
}

}  // namespace

TEST_CASE("resultant examples") {
  CHECK(resultant(P({-2, 1}), P({-3, 1})) == -1);
  CHECK(resultant(P({1, 0, 1}), P({-1, 1})) == 2);
  CHECK(resultant(P({-1, 0, 1}), P({-1, 1})) == 0);
  CHECK_THROWS_AS(resultant(QPoly(), QPoly()), ContractError);
}

TEST_CASE("resultant vanishes exactly on common roots, against Sylvester determinant") {
  std::mt19937 rng(1234);
  int shared = 0;
  for (int trial = 0; trial < 500; ++trial) {
    QPoly a = random_poly(rng, 6, 4), b = random_poly(rng, 6, 4);
    if (trial % 3 == 0) {
      QPoly c = random_poly(rng, 2, 3);
      a = a * c;
      b = b * c;
      if (a.degree() > 6 || b.degree() > 6) continue;
    }
    Rational r = resultant(a, b);
    CHECK(r == sylvester_resultant(a, b));
    bool common = gcd(a, b).degree() > 0;
    shared += common;
    CHECK((r == 0) == common);
  }
  CHECK(shared > 50);
}

TEST_CASE("isolate_roots x^2-2 against sign-change bisection") {
  auto boxes = isolate_roots(P({-2, 0, 1}), Rational(1, 1000));
  REQUIRE(boxes.size() == 2);
  for (const auto& b : boxes) {
    CHECK(b.real);
    CHECK(b.width() <= Rational(1, 1000));
  }
  // Oracle: sign change of x^2-2 across each real interval.
  QPoly p = P({-2, 0, 1});
  for (const auto& b : boxes) CHECK(sign_at(p, b.re_lo) * sign_at(p, b.re_hi) < 0);
  CHECK(boxes[0].re_hi < 0);
  CHECK(std::abs(boxes[1].re_mid().get_d() - 1.41421356) < 1e-3);
}

TEST_CASE("isolate_roots trivial and imaginary") {
  auto z = isolate_roots(P({0, 1}), Rational(1));
  REQUIRE(z.size() == 1);
  CHECK(z[0].re_lo == 0);
  CHECK(z[0].re_hi == 0);
  auto i = isolate_roots(P({1, 0, 1}), Rational(1, 1000));
  REQUIRE(i.size() == 2);
  CHECK(!i[0].real);
  CHECK(i[0].im_hi < 0);
  CHECK(i[1].im_lo > 0);
  CHECK(std::abs(i[1].im_mid().get_d() - 1.0) < 1e-3);
  CHECK_THROWS_AS(isolate_roots(P({1, 2, 1}), Rational(1)), ContractError);
}

TEST_CASE("isolate_roots: count, disjointness, nested refinement on random polynomials") {
  std::mt19937 rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    QPoly p = random_poly(rng, 8, 9);
    if (p.degree() < 1 || !is_squarefree(p)) continue;
    auto boxes = isolate_roots(p, Rational(1, 16));
    REQUIRE(static_cast<int>(boxes.size()) == p.degree());
    for (std::size_t a = 0; a < boxes.size(); ++a)
      for (std::size_t b = a + 1; b < boxes.size(); ++b) CHECK(!boxes[a].intersects(boxes[b]));
    auto finer = refine_roots(p, boxes, Rational(1, 1 << 20));
    for (std::size_t a = 0; a < boxes.size(); ++a) {
      CHECK(finer[a].re_lo >= boxes[a].re_lo);
      CHECK(finer[a].re_hi <= boxes[a].re_hi);
      CHECK(finer[a].im_lo >= boxes[a].im_lo);
      CHECK(finer[a].im_hi <= boxes[a].im_hi);
      CHECK(finer[a].width() <= Rational(1, 1 << 20));
      if (finer[a].real) CHECK(sign_at(p, finer[a].re_lo) * sign_at(p, finer[a].re_hi) <= 0);
    }
  }
}

TEST_CASE("roots of unity") {
  auto w = AlgebraicNumber::root_of(P({1, 1, 1}), 0);
  auto ord = root_of_unity_order(w.value);
  REQUIRE(ord.has_value());
  CHECK(*ord == 3);
  CHECK(w.value.pow(3) == NFElem(1));
  CHECK(!is_root_of_unity(NFElem(2)));
  auto phi = AlgebraicNumber::root_of(P({-1, -1, 1}), 0);
  CHECK(!is_root_of_unity(phi.value));
  CHECK(is_root_of_unity(NFElem(-1)));
  // Every power of a primitive 12th root of unity has the expected order.
  auto z = AlgebraicNumber::root_of(cyclotomic(12), 0);
  for (int e = 1; e <= 12; ++e) {
    NFElem a = z.value.pow(e);
    auto o = root_of_unity_order(a);
    REQUIRE(o.has_value());
    CHECK(a.pow(*o) == NFElem(1));
    CHECK(*o == 12 / std::gcd(12, e));
  }
}

TEST_CASE("number field arithmetic and minimal polynomials") {
  auto k = NumberField::make(P({-2, 0, 1}));
  NFElem s = NFElem::generator(k);
  CHECK(s * s == NFElem(2));
  NFElem a = s + NFElem(1);
  CHECK(a * a.inverse() == NFElem(1));
  CHECK(minimal_polynomial(a) == P({-1, -2, 1}));
  CHECK_THROWS_AS(NumberField::make(P({-1, 0, 1})), ContractError);
}

TEST_CASE("factorisation over Q") {
  // t^5 + (1-t)^5 - 1 = 5 t (t-1) (t^2 - t + 1)
  QPoly t = P({0, 1});
  QPoly f = t.pow(5) + (P({1}) - t).pow(5) - P({1});
  auto fz = factor(f);
  REQUIRE(fz.complete());
  REQUIRE(fz.factors.size() == 3);
  CHECK(fz.factors[0].poly == P({-1, 1}));
  CHECK(fz.factors[1].poly == P({0, 1}));
  CHECK(fz.factors[2].poly == P({1, -1, 1}));
  CHECK(fz.unit == 5);
  // Product of two irreducible quartics with repeated factor.
  QPoly g = P({2, 0, 0, 1, 1}) * P({-3, 1, 0, 0, 1}).pow(2) * P({3, 7});
  auto gz = factor(g);
  REQUIRE(gz.factors.size() == 3);
  QPoly back = QPoly::constant(gz.unit);
  for (const auto& fc : gz.factors) back = back * fc.poly.pow(fc.multiplicity);
  CHECK(back == g);
  CHECK(is_irreducible(P({-2, 0, 0, 0, 1})));
  CHECK(!is_irreducible(P({-4, 0, 0, 0, 1})));  // (x^2-2)(x^2+2)
}

TEST_CASE("factorisation reconstructs random products") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    QPoly a = random_poly(rng, 4, 5), b = random_poly(rng, 4, 5);
    QPoly f = a * b;
    auto fz = factor(f);
    CHECK(fz.complete());
    QPoly back = QPoly::constant(fz.unit);
    for (const auto& fc : fz.factors) {
      back = back * fc.poly.pow(fc.multiplicity);
      CHECK(is_irreducible(fc.poly, 8));
    }
    CHECK(back == f);
  }
}

TEST_CASE("integer kernel") {
  auto k1 = integer_kernel(Matrix<Rational>::from_rows({{2, 4}}));
  REQUIRE(k1.size() == 1);
  CHECK(k1[0] == Vec<Integer>{2, -1});
  CHECK(integer_kernel(Matrix<Rational>::from_rows({{1, 0}, {0, 1}})).empty());
  auto k3 = integer_kernel(Matrix<Rational>::from_rows({{2, 3}, {4, 6}}));
  REQUIRE(k3.size() == 1);
  CHECK(k3[0] == Vec<Integer>{3, -2});
}

TEST_CASE("integer kernel is saturated") {
  // x + y/2 + z/3 = 0: rational kernel basis vectors scale to a non-saturated
  // lattice; the integer kernel must have covolume equal to that of the
  // primitive normal vector (6,3,2), i.e. Gram determinant 49.
  auto k = integer_kernel(Matrix<Rational>::from_rows({{1, Rational(1, 2), Rational(1, 3)}}));
  REQUIRE(k.size() == 2);
  Integer g00 = 0, g01 = 0, g11 = 0;
  for (int i = 0; i < 3; ++i) {
    g00 += k[0][i] * k[0][i];
    g01 += k[0][i] * k[1][i];
    g11 += k[1][i] * k[1][i];
  }
  CHECK(g00 * g11 - g01 * g01 == 49);
}

TEST_CASE("lattice reduction examples") {
  auto r = lattice_reduce({{5, 0}, {3, 1}});
  Integer best = -1;
  for (const auto& v : r) {
    Integer n = v[0] * v[0] + v[1] * v[1];
    if (best < 0 || n < best) best = n;
  }
  CHECK(best == 5);
  CHECK(abs(r[0][0] * r[1][1] - r[0][1] * r[1][0]) == 5);
  auto id = lattice_reduce({{1, 0}, {0, 1}});
  CHECK(id == std::vector<Vec<Integer>>{{1, 0}, {0, 1}});
  auto s = lattice_reduce({{2, 0}, {1, 1}});
  // (1,1) and (1,-1) are both shortest in this lattice.
  CHECK(s[0][0] * s[0][0] + s[0][1] * s[0][1] == 2);
  CHECK_THROWS_AS(lattice_reduce({{1, 2}, {2, 4}}), ContractError);
}

TEST_CASE("lattice reduction preserves the Gram determinant") {
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> co(-30, 30);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<Vec<Integer>> b(3, Vec<Integer>(4));
    for (auto& v : b)
      for (auto& x : v) x = co(rng);
    auto gram_det = [](const std::vector<Vec<Integer>>& vs) {
      Matrix<Rational> G(vs.size(), vs.size());
      for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = 0; j < vs.size(); ++j) {
          Integer s = 0;
          for (std::size_t c = 0; c < vs[i].size(); ++c) s += vs[i][c] * vs[j][c];
          G(i, j) = s;
        }
      return determinant(G);
    };
    Rational d0 = gram_det(b);
    if (d0 == 0) continue;
    auto r = lattice_reduce(b);
    CHECK(gram_det(r) == d0);
  }
}

TEST_CASE("exact kernel") {
  auto k = exact_kernel(Matrix<Rational>::from_rows({{1, 1}}));
  REQUIRE(k.size() == 1);
  CHECK(primitive_integer_vector(k[0]) == Vec<Integer>{1, -1});
  CHECK(exact_kernel(Matrix<Rational>::from_rows({{1, 2}, {3, 4}})).empty());
  CHECK(exact_kernel(Matrix<Rational>::from_rows({{1, 2, 3}, {2, 4, 6}})).size() == 2);
}

TEST_CASE("exact kernel: M v = 0 and rank-nullity on random matrices") {
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> co(-3, 3), dim(1, 6);
  for (int trial = 0; trial < 200; ++trial) {
    int r = dim(rng), c = dim(rng);
    Matrix<Rational> M(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) M(i, j) = co(rng);
    auto ker = exact_kernel(M);
    for (const auto& v : ker)
      for (const auto& x : M * v) CHECK(x == 0);
    // Independent oracle: rank by determinant of maximal nonzero minors is
    // costly; use elimination over Z/p for a large prime instead.
    const long p = 1000003;
    std::vector<std::vector<long>> A(r, std::vector<long>(c));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) A[i][j] = ((M(i, j).get_num().get_si() % p) + p) % p;
    int rk = 0;
    for (int col = 0; col < c && rk < r; ++col) {
      int piv = -1;
      for (int i = rk; i < r; ++i)
        if (A[i][col]) piv = i;
      if (piv < 0) continue;
      std::swap(A[piv], A[rk]);
      long inv = 1, b = A[rk][col], e = p - 2;
      while (e) {
        if (e & 1) inv = inv * b % p;
        b = b * b % p;
        e >>= 1;
      }
      for (int i = 0; i < r; ++i) {
        if (i == rk || !A[i][col]) continue;
        long f = A[i][col] * inv % p;
        for (int j = 0; j < c; ++j) A[i][j] = ((A[i][j] - f * A[rk][j]) % p + p) % p;
      }
      ++rk;
    }
    CHECK(static_cast<int>(ker.size()) + rk == c);
  }
}

TEST_CASE("shortest sup-norm vector beats exhaustive box search") {
  std::vector<Vec<Integer>> b = lattice_reduce({{7, 3, 1}, {2, 9, 4}});
  auto best = shortest_sup_norm_vector(b);
  Integer s = sup_norm(best);
  for (int x = -6; x <= 6; ++x)
    for (int y = -6; y <= 6; ++y) {
      if (!x && !y) continue;
      Vec<Integer> v(3);
      for (int c = 0; c < 3; ++c) v[c] = x * b[0][c] + y * b[1][c];
      CHECK(s <= sup_norm(v));
    }
}
