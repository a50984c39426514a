#include <random>

#include "doctest.h"
#include "thue/siegelwron/siegelwron.hpp"

using namespace thue;
using namespace thue::siegel;

namespace {

RationalFunction R(const char* s) { return RationalFunction::parse(s); }

bool kernel_contains(const SiegelInstance& inst, const Vec<Rational>& v) {
  auto Mv = inst.system * v;
  return std::all_of(Mv.begin(), Mv.end(), [](const Rational& x) { return sgn(x) == 0; });
}

Vec<NFElem> nf(std::initializer_list<long> xs) {
  Vec<NFElem> v;
  for (long x : xs) v.push_back(NFElem(Rational(x)));
  return v;
}

RationalFunction random_rf(std::mt19937& rng, int maxdeg) {
  std::uniform_int_distribution<int> co(-4, 4), dg(0, maxdeg);
  auto poly = [&] {
    int d = dg(rng);
    std::vector<Rational> c(d + 1);
    for (auto& x : c) x = co(rng);
    if (c[d] == 0) c[d] = 1;
    return QPoly(c);
  };
  while (true) {
    RationalFunction f(poly(), poly());
    if (!f.is_zero()) return f;
  }
}

}  // namespace

TEST_CASE("build_instance examples") {
  std::vector<RationalFunction> pu{R("t"), R("1-t"), R("1")};
  std::vector<long> zeros{0, 0, 0};
  auto inst = build_instance(pu, 1, zeros, 2);
  CHECK(inst.unknowns() == 3);
  CHECK(kernel_contains(inst, Vec<Rational>{1, 1, -1}));
  CHECK(kernel_dimension(inst) == 1);
  CHECK(kernels_agree(inst));

  std::vector<RationalFunction> fs{R("t"), R("1-t")};
  std::vector<long> m2{2, 2}, m1{1, 1};
  auto i2 = build_instance(fs, 2, m2, 2);
  // A_1 = (1-t)^2/(t-2)^2, A_2 = -t^2/(t-2)^2 in numerator coordinates.
  CHECK(kernel_contains(i2, Vec<Rational>{1, -2, 1, 0, 0, -1}));
  CHECK(kernels_agree(i2));
  auto i1 = build_instance(fs, 2, m1, 2);
  CHECK(kernel_dimension(i1) == 0);
  CHECK(kernels_agree(i1));

  std::vector<long> ms{0, 0};
  CHECK_THROWS_AS(build_instance(fs, 1, ms, 0), ContractError);
  CHECK_THROWS_AS(build_instance(fs, 1, ms, 1), ContractError);
}

TEST_CASE("jet and coefficient systems have equal kernels") {
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> rr(2, 4), nn(1, 5), mm(-1, 6), qq(-6, 6);
  int done = 0, nontrivial = 0;
  while (done < 100) {
    int r = rr(rng);
    unsigned n = nn(rng);
    std::vector<RationalFunction> fs;
    for (int i = 0; i < r; ++i) fs.push_back(random_rf(rng, 2));
    std::vector<long> Ms;
    for (int i = 0; i < r; ++i) Ms.push_back(mm(rng));
    Rational q0 = qq(rng);
    if (ff::support_set(fs).contains(ff::Place::at(q0))) continue;
    auto inst = build_instance(fs, n, Ms, q0);
    CHECK(kernels_agree(inst));
    if (kernel_dimension(inst) > 0) ++nontrivial;
    ++done;
  }
  MESSAGE("nontrivial kernels: " << nontrivial);
  CHECK(nontrivial > 10);
}

TEST_CASE("small_solution examples") {
  std::vector<RationalFunction> pu{R("t"), R("1-t"), R("1")};
  std::vector<long> zeros{0, 0, 0};
  auto t = small_solution(build_instance(pu, 1, zeros, 2));
  CHECK(t.verified);
  Vec<Integer> a = t.alpha;
  if (a[0] < 0)
    for (auto& x : a) x = -x;
  CHECK(a == Vec<Integer>{1, 1, -1});
  CHECK(t.height.hi == 0);
  for (const auto& h : t.function_heights) CHECK(h.hi == 0);
  CHECK(t.support == IndexSet{0, 1, 2});

  std::vector<RationalFunction> fs{R("t"), R("1-t")};
  std::vector<long> m2{2, 2}, m1{1, 1};
  auto t2 = small_solution(build_instance(fs, 2, m2, 2));
  CHECK(t2.verified);
  CHECK(t2.height.exact.value() <= log_of(2));
  CHECK_THROWS_AS(small_solution(build_instance(fs, 2, m1, 2)), ContractError);
}

TEST_CASE("small_solution is no taller than any kernel point in a small box") {
  // Oracle: enumerate integer vectors with entries in [-3, 3] in the kernel.
  std::mt19937 rng(32);
  std::uniform_int_distribution<int> mm(0, 2), nn(1, 2);
  int checked = 0;
  for (int trial = 0; trial < 400 && checked < 15; ++trial) {
    std::vector<RationalFunction> fs{random_rf(rng, 1), random_rf(rng, 1), random_rf(rng, 1)};
    std::vector<long> Ms{mm(rng), mm(rng), mm(rng)};
    if (ff::support_set(fs).contains(ff::Place::at(7))) continue;
    auto inst = build_instance(fs, nn(rng), Ms, 7, false);
    if (kernel_dimension(inst) == 0 || inst.unknowns() > 6) continue;
    auto t = small_solution(inst);
    CHECK(t.verified);
    const std::size_t k = inst.unknowns();
    Vec<Rational> v(k, Rational(0));
    std::vector<int> digits(k, -3);
    while (true) {
      for (std::size_t i = 0; i < k; ++i) v[i] = digits[i];
      if (std::any_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) != 0; }) && kernel_contains(inst, v)) {
        std::vector<Rational> c(v.begin(), v.end());
        CHECK(t.height.lo <= projective_height(c).hi + 1e-12);
      }
      std::size_t i = 0;
      while (i < k && digits[i] == 3) digits[i++] = -3;
      if (i == k) break;
      ++digits[i];
    }
    ++checked;
  }
  CHECK(checked >= 10);
}

TEST_CASE("minimal_vanishing_order examples") {
  std::vector<RationalFunction> pu{R("t"), R("1-t"), R("1")};
  std::vector<Budget> all3(3, Budget::search());
  auto r1 = minimal_vanishing_order(pu, 1, all3, 2);
  CHECK(r1.N == 0);
  CHECK(r1.lambda == IndexSet{0, 1, 2});
  CHECK(format_set(r1.lambda) == "{1,2,3}");

  std::vector<RationalFunction> fs{R("t"), R("1-t")};
  std::vector<Budget> all2(2, Budget::search());
  auto r2 = minimal_vanishing_order(fs, 2, all2, 2);
  CHECK(r2.N == 2);
  CHECK(r2.trivial_below);
  CHECK(r2.tuple.verified);

  std::vector<RationalFunction> prop{R("t"), R("2*t")};
  auto r3 = minimal_vanishing_order(prop, 3, all2, 3);
  CHECK(r3.N == 0);
  CHECK(r3.lambda == IndexSet{0, 1});
  Vec<Integer> a = r3.tuple.alpha;
  if (a[0] < 0)
    for (auto& x : a) x = -x;
  CHECK(a == Vec<Integer>{8, -1});

  std::vector<Budget> none{Budget::fixed(0), Budget::fixed(0)};
  CHECK_THROWS_AS(minimal_vanishing_order(fs, 2, none, 2), ContractError);
  std::vector<Budget> starved{Budget::fixed(-1), Budget::search()};
  VanishingConfig cfg;
  cfg.max_N = 64;
  CHECK_THROWS_AS(minimal_vanishing_order(fs, 2, starved, 2, cfg), ContractError);
}

TEST_CASE("vanishing order is monotone in N") {
  std::mt19937 rng(33);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<RationalFunction> fs{random_rf(rng, 1), random_rf(rng, 1), R("1")};
    if (ff::support_set(fs).contains(ff::Place::at(5))) continue;
    std::vector<Budget> all(3, Budget::search());
    auto res = minimal_vanishing_order(fs, 2, all, 5);
    CHECK(res.trivial_below);
    for (long N = res.N; N <= res.N + 3; ++N) {
      std::vector<long> b(3, N);
      CHECK(kernel_dimension(build_instance(fs, 2, b, 5, false)) > 0);
    }
  }
}

TEST_CASE("first vanishing order for the partition of unity") {
  std::vector<RationalFunction> pu{R("t"), R("1-t"), R("1")};
  std::vector<Budget> all(3, Budget::search());
  double worst = 0;
  for (unsigned n = 4; n <= 24; ++n) {
    auto res = minimal_vanishing_order(pu, n, all, 2);
    long slack = 2 * res.N - static_cast<long>(n);
    worst = std::max(worst, static_cast<double>(slack) / n);
    CHECK(res.trivial_below);
    CHECK(slack <= 2);
  }
  MESSAGE("max slack/n: " << worst);
}

TEST_CASE("connected_components examples") {
  std::vector<IndexSet> g{{0, 1}, {2, 3, 4}, {1, 4}, {5, 6, 7}, {6, 7, 8}};
  CHECK(connected_components(g) == std::vector<IndexSet>{{0, 1, 2, 3, 4}, {5, 6, 7, 8}});
  CHECK(connected_components({{0, 1}, {2, 3}}).size() == 2);
  CHECK(connected_components({{0, 1}, {1, 2}, {2, 3}}) == std::vector<IndexSet>{{0, 1, 2, 3}});
  CHECK_THROWS_AS(connected_components({{0, 1}, {}}), ContractError);
}

TEST_CASE("ortho_basis examples and sum dimensions") {
  auto o = ortho_basis({0, 1}, nf({1, 1, 1}));
  REQUIRE(o.basis.size() == 1);
  CHECK(o.basis[0] == nf({1, -1, 0}));

  auto w3 = nf({2, -3, 5});
  auto a = ortho_basis({0, 1}, w3), b = ortho_basis({1, 2}, w3), all = ortho_basis({0, 1, 2}, w3);
  auto both = a.basis;
  both.insert(both.end(), b.basis.begin(), b.basis.end());
  CHECK(span_dimension(both) == 2);
  auto joined = both;
  joined.insert(joined.end(), all.basis.begin(), all.basis.end());
  CHECK(span_dimension(joined) == 2);

  auto w4 = nf({1, 2, 3, 4});
  auto c = ortho_basis({0, 1}, w4), d = ortho_basis({2, 3}, w4);
  auto cd = c.basis;
  cd.insert(cd.end(), d.basis.begin(), d.basis.end());
  CHECK(span_dimension(cd) == 2);
  CHECK(span_dimension(ortho_basis({0, 1, 2, 3}, w4).basis) == 3);

  CHECK_THROWS_AS(ortho_basis({0, 1}, nf({1, 0, 1})), ContractError);
}

TEST_CASE("ortho_basis vectors lie in the orthogonal space") {
  std::mt19937 rng(34);
  std::uniform_int_distribution<int> co(1, 20), sign(0, 1), rr(2, 7);
  for (int trial = 0; trial < 100; ++trial) {
    int r = rr(rng);
    Vec<NFElem> w;
    for (int i = 0; i < r; ++i) w.push_back(NFElem(Rational(sign(rng) ? co(rng) : -co(rng), co(rng))));
    IndexSet lam;
    for (int i = 0; i < r; ++i)
      if (sign(rng)) lam.push_back(i);
    if (lam.empty()) lam.push_back(0);
    auto o = ortho_basis(lam, w);
    CHECK(span_dimension(o.basis) == lam.size() - 1);
    for (const auto& v : o.basis) {
      NFElem dot(0);
      for (int i = 0; i < r; ++i) dot += v[i] * w[i];
      CHECK(is_zero(dot));
      for (int i = 0; i < r; ++i)
        if (std::find(lam.begin(), lam.end(), i) == lam.end()) CHECK(is_zero(v[i]));
    }
  }
}

TEST_CASE("minimal_relation") {
  std::vector<RationalFunction> F{R("(1-t)^2*t^2/(t-2)^2"), R("-t^2*(1-t)^2/(t-2)^2")};
  CHECK(minimal_relation(F) == std::vector<Rational>{1, 1});
  std::vector<RationalFunction> pu{R("t"), R("1-t"), R("-1")};
  CHECK(minimal_relation(pu) == std::vector<Rational>{1, 1, 1});
  std::vector<RationalFunction> dep{R("t"), R("2*t"), R("-3*t")};
  CHECK_THROWS_AS(minimal_relation(dep), ContractError);
  std::vector<RationalFunction> free{R("t"), R("t^2")};
  CHECK_THROWS_AS(minimal_relation(free), ContractError);
}

TEST_CASE("wronskian_basis examples") {
  std::vector<RationalFunction> fs{R("t"), R("1-t")};
  std::vector<RationalFunction> As{R("(1-t)^2/(t-2)^2"), R("-t^2/(t-2)^2")};
  std::vector<long> Ms{2, 2};
  auto cert = wronskian_basis({0, 1}, As, fs, 2, AlgebraicNumber::rational(3), Ms);
  CHECK(cert.m0 == 0);
  CHECK(cert.rho == std::vector<unsigned>{0});
  REQUIRE(cert.basis.size() == 1);
  CHECK(cert.basis[0] == nf({4, -9}));
  CHECK(cert.w == nf({9, 4}));
  CHECK(cert.ws_relations_verified);
  REQUIRE(cert.heights[0]);
  CHECK(cert.heights[0]->exact.value() == log_of(9));
  CHECK(cert.report(fs, 2).find("v1 = (4, -9)") != std::string::npos);

  std::vector<RationalFunction> pu{R("t"), R("1-t"), R("1")};
  std::vector<RationalFunction> ones{R("1"), R("1"), R("-1")};
  std::vector<long> zero{0, 0, 0};
  auto c3 = wronskian_basis({0, 1, 2}, ones, pu, 1, AlgebraicNumber::rational(5), zero);
  CHECK(c3.w == nf({5, -4, 1}));
  CHECK(c3.basis.size() == 2);
  CHECK(span_dimension(c3.basis) == 2);
  for (const auto& v : c3.basis) CHECK(is_zero(v[0] * NFElem(5) - v[1] * NFElem(4) + v[2]));

  std::vector<RationalFunction> prop{R("t"), R("2*t"), R("1")};
  std::vector<RationalFunction> dep{R("2"), R("-1"), R("1")};
  CHECK_THROWS_AS(wronskian_basis({0, 1, 2}, dep, prop, 1, AlgebraicNumber::rational(5), zero), ContractError);
}

TEST_CASE("wronskian_basis at an algebraic point") {
  std::vector<RationalFunction> pu{R("t"), R("1-t"), R("1")};
  std::vector<RationalFunction> ones{R("1"), R("1"), R("-1")};
  std::vector<long> zero{0, 0, 0};
  auto P = AlgebraicNumber::root_of(QPoly{-2, 0, 1}, 1);
  auto c = wronskian_basis({0, 1, 2}, ones, pu, 1, P, zero);
  CHECK(span_dimension(c.basis) == 2);
  for (const auto& v : c.basis) {
    NFElem dot(0);
    for (int i = 0; i < 3; ++i) dot += v[i] * c.w[i];
    CHECK(is_zero(dot));
  }
}

TEST_CASE("convex_bound examples") {
  std::vector<Rational> a{1, 1}, x{1, 1};
  auto b = convex_bound(a, x, 2, 2);
  CHECK(b.lhs == -1);
  CHECK(b.slack == 0);
  CHECK(b.holds);
  std::vector<Rational> a2{2, 1}, x2{1, 2};
  auto b2 = convex_bound(a2, x2, 4, 3);
  CHECK(b2.lhs == -2);
  CHECK(b2.bound == Rational(-4, 3));
  CHECK(b2.holds);
  std::vector<Rational> bad{Rational(1, 2), Rational(1, 2)};
  CHECK_THROWS_AS(convex_bound(bad, x, 2, 1), ContractError);
  std::vector<Rational> dec{2, 1};
  CHECK_THROWS_AS(convex_bound(a, dec, 3, 2), ContractError);
}

TEST_CASE("convex_bound holds on random admissible tuples") {
  std::mt19937 rng(35);
  std::uniform_int_distribution<int> ss(1, 6), num(1, 30), den(1, 10);
  for (int trial = 0; trial < 1000; ++trial) {
    int s = ss(rng);
    std::vector<Rational> a, x;
    for (int i = 0; i < s; ++i) {
      Rational ai(num(rng), den(rng)), xi(num(rng), den(rng));
      ai.canonicalize();
      xi.canonicalize();
      a.push_back(ai);
      x.push_back(xi);
    }
    if (a.back() < 1) a.back() += 1;
    std::sort(x.begin(), x.end());
    Rational rho = 0, tau = 0;
    for (int i = 0; i < s; ++i) {
      rho += a[i];
      tau += a[i] * x[i];
    }
    tau += Rational(num(rng), den(rng));
    auto b = convex_bound(a, x, tau, rho);
    CHECK(b.holds);
    CHECK(b.slack <= 0);
  }
}
