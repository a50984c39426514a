#include <cmath>
#include <random>

#include "doctest.h"
#include "thue/reduction/reduction.hpp"

using namespace thue;
using namespace thue::reduction;

namespace {

RationalFunction R(const char* s) { return RationalFunction::parse(s); }

SubgroupPresentation pres(std::vector<std::vector<const char*>> gens) {
  SubgroupPresentation g;
  g.r = gens.front().size();
  for (const auto& v : gens) {
    std::vector<RationalFunction> row;
    for (const char* s : v) row.push_back(R(s));
    g.generators.push_back(row);
  }
  return g;
}

Rational ratio(const Integer& a, const Integer& b) {
  Rational x(a, b);
  x.canonicalize();
  return x;
}

std::vector<Integer> ints(std::initializer_list<long> xs) {
  std::vector<Integer> v;
  for (long x : xs) v.push_back(x);
  return v;
}

}  // namespace

TEST_CASE("is_constant_free examples") {
  auto bad = pres({{"t", "1"}, {"1", "2*t"}});
  auto v = is_constant_free(bad, 1);
  REQUIRE_FALSE(v.constant_free);
  REQUIRE(v.witness);
  CHECK(v.witness->constant == 2);
  // The witness is re-derived from the presentation.
  auto h = character_image(bad, v.witness->e);
  RationalFunction c(1);
  for (std::size_t j = 0; j < h.size(); ++j) {
    long k = v.witness->lambda[j].get_si();
    c *= k >= 0 ? h[j].pow(k) : RationalFunction(1) / h[j].pow(-k);
  }
  CHECK(c == RationalFunction(v.witness->constant));
  CHECK_FALSE(is_root_of_unity(NFElem(v.witness->constant)));
  CHECK(v.describe().find("NOT constant-free") == 0);
  CHECK_FALSE(is_constant_free(bad, 3).constant_free);

  auto good = pres({{"t", "1"}, {"1", "1-t"}});
  auto g = is_constant_free(good, 3);
  CHECK(g.constant_free);
  CHECK(g.describe().find("box 3") != std::string::npos);

  auto sign = pres({{"t", "-t"}});
  CHECK(is_constant_free(sign, 3).constant_free);
}

TEST_CASE("dirichlet_approx examples") {
  auto a = dirichlet_approx(ints({3, 5}), 2);
  CHECK(a.q == 1);
  CHECK(a.p == ints({1, 1}));
  auto b = dirichlet_approx(ints({17}), 3);
  CHECK(b.q == 1);
  CHECK(b.p == ints({1}));
  auto c = dirichlet_approx(ints({6, 6}), 2);
  CHECK(c.n == 6);
  CHECK(c.rem == ints({0, 0}));
  CHECK_THROWS_AS(dirichlet_approx(ints({0, 0}), 2), ContractError);
}

TEST_CASE("dirichlet_approx agrees with an exhaustive scan and the displayed bounds") {
  std::mt19937 rng(41);
  std::uniform_int_distribution<int> kk(1, 4), QQ(2, 10), ll(-200, 200);
  for (int trial = 0; trial < 1000; ++trial) {
    int kappa = kk(rng);
    long Q = QQ(rng);
    if (kappa == 4 && Q > 6) Q = 6;
    std::vector<Integer> lam;
    for (int j = 0; j < kappa; ++j) lam.push_back(ll(rng));
    if (std::all_of(lam.begin(), lam.end(), [](const Integer& x) { return x == 0; })) lam[0] = 1;
    auto d = dirichlet_approx(lam, Q);
    long A = 0;
    for (const auto& x : lam) A = std::max(A, std::abs(x.get_si()));
    // Oracle: first q with every |q l - p A| Q < A for some integer p.
    long Qk = 1;
    for (int j = 0; j < kappa; ++j) Qk *= Q;
    long oracle = -1;
    for (long q = 1; q <= Qk && oracle < 0; ++q) {
      bool ok = true;
      for (const auto& x : lam) {
        long l = x.get_si(), best = LONG_MAX;
        for (long p = -2 * Qk - 1; p <= 2 * Qk + 1; ++p) best = std::min(best, std::abs(q * l - p * A));
        if (best * Q >= A) ok = false;
      }
      if (ok) oracle = q;
    }
    CHECK(d.q == oracle);
    for (int j = 0; j < kappa; ++j) {
      Rational err = abs(Rational(ratio(d.q * lam[j], A) - Rational(d.p[j])));
      CHECK(err < Rational(1, Q));
      CHECK(abs(d.p[j]) <= 2 * Qk);
      CHECK(Rational(abs(d.rem[j])) <= ratio(d.n + 1, Q) + 2 * Qk);
      CHECK(lam[j] == d.n * d.p[j] + d.rem[j]);
    }
  }
}

TEST_CASE("decompose examples") {
  auto gam = pres({{"t", "1"}, {"1", "1-t"}});
  TorsionVector om{0, 0};
  std::vector<RationalFunction> theta{R("1"), R("1")};
  auto d = decompose(gam, ints({7, 12}), om, theta, 2);
  CHECK(d.approx.q == 1);
  CHECK(d.approx.p == ints({1, 1}));
  CHECK(d.n() == 12);
  CHECK(d.approx.rem == ints({-5, 0}));
  CHECK(d.f[0] == R("t"));
  CHECK(d.rho[0] == R("1/t^5"));

  auto e = decompose(gam, ints({6, 6}), om, theta, 2);
  CHECK(e.n() == 6);
  CHECK(e.approx.rem == ints({0, 0}));

  auto one = pres({{"t", "1+t"}});
  auto f = decompose(one, ints({9}), om, theta, 3);
  CHECK(f.n() == 9);
  CHECK(f.approx.p == ints({1}));
  CHECK(f.approx.rem == ints({0}));
}

TEST_CASE("rank one decompositions are exact") {
  std::mt19937 rng(42);
  std::uniform_int_distribution<int> ll(-60, 60), QQ(2, 9);
  auto one = pres({{"1", "(t+2)/(t-3)", "t^2"}});
  TorsionVector om{0, Rational(1, 2), Rational(1, 3)};
  std::vector<RationalFunction> theta{R("1"), R("t"), R("2")};
  for (int trial = 0; trial < 50; ++trial) {
    long l = ll(rng);
    if (l == 0) continue;
    auto d = decompose(one, ints({l}), om, theta, QQ(rng));
    CHECK(d.n() == static_cast<unsigned long>(std::abs(l)));
    CHECK(d.approx.p == ints({l > 0 ? 1 : -1}));
    CHECK(d.approx.rem == ints({0}));
  }
  auto d = decompose(one, ints({3}), om, theta, 2);
  auto a = d.alpha_at(AlgebraicNumber::rational(5));
  CHECK(a[0] == NFElem(1));
  CHECK(a[1] == NFElem(-5));
  CHECK(is_root_of_unity(a[2] / NFElem(2)));
  CHECK(root_of_unity_order(a[2] / NFElem(2)) == 3u);
}

TEST_CASE("normalize_to_first_coordinate") {
  auto gam = pres({{"t", "1-t"}});
  std::vector<RationalFunction> elem{R("t^3"), R("(1-t)^3")};
  std::vector<RationalFunction> theta{R("1"), R("1")};
  auto n = normalize_to_first_coordinate(gam, elem, theta);
  CHECK(n.gamma.generators[0][0] == R("1"));
  CHECK(n.gamma.generators[0][1] == R("(1-t)/t"));
  CHECK(n.element[1] == R("(1-t)^3/t^3"));

  auto already = pres({{"1", "t"}});
  std::vector<RationalFunction> e2{R("1"), R("t^2")};
  auto m = normalize_to_first_coordinate(already, e2, theta);
  CHECK(m.gamma.generators[0][1] == R("t"));
  CHECK(m.element[1] == R("t^2"));

  std::vector<RationalFunction> th{R("t"), R("-1")};
  std::vector<RationalFunction> e3{R("1"), R("t")};
  CHECK_THROWS_AS(normalize_to_first_coordinate(already, e3, th), ContractError);
}
