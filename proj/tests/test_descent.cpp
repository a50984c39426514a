#include <random>

#include "doctest.h"
#include "thue/descent/descent.hpp"

using namespace thue;
using namespace thue::descent;

namespace {

RationalFunction R(const char* s) { return RationalFunction::parse(s); }

AlgebraicNumber at(long q) { return AlgebraicNumber::rational(q); }

// A hand-built single- or multi-stage state for the inequality algebra.
DescentState manual_state(std::size_t r, long d, unsigned n, std::vector<std::pair<long, IndexSet>> stages) {
  DescentState st;
  st.r = r;
  st.d = d;
  st.n = n;
  for (std::size_t i = 0; i < r; ++i) st.w.push_back(NFElem(Rational(static_cast<long>(i) + 2)));
  std::vector<Vec<NFElem>> all;
  std::size_t prev = 0;
  for (auto& [N, lam] : stages) {
    Stage s;
    s.N = N;
    s.lambda = lam;
    s.ortho = siegel::ortho_basis(lam, st.w).basis;
    all.insert(all.end(), s.ortho.begin(), s.ortho.end());
    s.span_dim = siegel::span_dimension(all);
    s.t = static_cast<long>(s.span_dim - prev);
    prev = s.span_dim;
    st.stages.push_back(std::move(s));
  }
  return st;
}

Vec<NFElem> orthogonal_alpha(const DescentState& st) {
  // Full-support vector of w-perp.
  Vec<NFElem> a(st.r, NFElem(0));
  NFElem acc(0);
  for (std::size_t i = 0; i + 1 < st.r; ++i) {
    a[i] = NFElem(Rational(static_cast<long>(i) + 1)) / st.w[i];
    acc += a[i] * st.w[i];
  }
  a[st.r - 1] = -acc / st.w[st.r - 1];
  return a;
}

}  // namespace

TEST_CASE("vanishing_subsum_check examples") {
  std::vector<NFElem> v1{NFElem(1), NFElem(-1), NFElem(2), NFElem(-2)};
  CHECK(vanishing_subsum_check(v1) == std::vector<IndexSet>{{0, 1}, {2, 3}});
  std::vector<NFElem> v2{NFElem(2), NFElem(3), NFElem(-5)};
  CHECK(vanishing_subsum_check(v2).empty());
  auto w = AlgebraicNumber::root_of(cyclotomic(3), 0);
  std::vector<NFElem> v3{NFElem(1), w.value, w.value * w.value};
  CHECK(vanishing_subsum_check(v3).empty());
  std::vector<NFElem> v4{NFElem(1), NFElem(0)};
  CHECK_THROWS_AS(vanishing_subsum_check(v4), ContractError);
}

TEST_CASE("claim construction examples") {
  std::vector<RationalFunction> pair{R("t"), R("1-t")};
  auto st = run_claim_construction(pair, 4, at(3));
  CHECK(st.s() == 1);
  CHECK(st.stages[0].lambda == IndexSet{0, 1});
  CHECK(st.stages[0].t == 1);
  CHECK(st.violations().empty());

  std::vector<RationalFunction> prop{R("t"), R("2*t")};
  auto sp = run_claim_construction(prop, 3, at(3));
  CHECK(sp.stages[0].N == 0);
  CHECK(sp.stages[0].lambda == IndexSet{0, 1});

  CHECK_THROWS_AS(run_claim_construction(pair, 4, at(1)), ContractError);
}

TEST_CASE("claim construction on (t, 1-t, 1, 1+t)") {
  std::vector<RationalFunction> fs{R("t"), R("1-t"), R("1"), R("1+t")};
  for (unsigned n = 4; n <= 8; n += 2) {
    auto skel = build_skeleton(fs, n);
    for (long P : {3L, 5L}) {
      auto st = specialize(skel, at(P));
      CAPTURE(st.report());
      CHECK(st.violations().empty());
      long tsum = 0;
      for (const auto& s : st.stages) tsum += s.t;
      CHECK(tsum == 3);
      CHECK(st.stages.back().t >= 1);
      for (const auto& s : st.stages) {
        REQUIRE(s.cert);
        CHECK(s.cert->basis.size() + 1 == s.lambda.size());
        CHECK(s.claim_iv_slack <= static_cast<long>(n));
      }
    }
  }
}

TEST_CASE("claim construction matches an exhaustive first-stage oracle") {
  // Oracle for N_1: smallest N such that some subset has a nontrivial kernel,
  // by a flat scan over N and all subsets.
  std::vector<RationalFunction> fs{R("t"), R("1-t"), R("1"), R("1+t")};
  for (unsigned n = 2; n <= 5; ++n) {
    auto skel = build_skeleton(fs, n);
    long oracle = -1;
    for (long N = 0; oracle < 0; ++N)
      for (unsigned mask = 3; mask < 16 && oracle < 0; ++mask) {
        if (__builtin_popcount(mask) < 2) continue;
        std::vector<long> b(4, -1);
        for (int i = 0; i < 4; ++i)
          if (mask >> i & 1) b[i] = N;
        if (siegel::kernel_dimension(siegel::build_instance(fs, n, b, skel.q0, false)) > 0) oracle = N;
      }
    CHECK(skel.stages[0].N == oracle);
  }
}

TEST_CASE("assemble_inequality examples") {
  // Single stage with t_1 = r - 1: lambda = (r-2) N_1/n - d.
  auto one = manual_state(3, 1, 6, {{2, {0, 1, 2}}});
  auto q = assemble_inequality(one, orthogonal_alpha(one));
  CHECK(q.lambda == Rational(1, 3) - 1);
  CHECK(q.holds);

  // N_j/n = d/(r-1) on every stage: lambda sits on the boundary -d/(r-1).
  auto edge = manual_state(3, 1, 2, {{1, {0, 1, 2}}});
  auto e = assemble_inequality(edge, orthogonal_alpha(edge));
  CHECK(e.lambda == Rational(-1, 2));
  CHECK(e.margin == 0);
  CHECK(e.convex.slack == 0);

  auto two = manual_state(4, 1, 6, {{1, {0, 1}}, {2, {1, 2, 3}}});
  auto alpha = orthogonal_alpha(two);
  auto q2 = assemble_inequality(two, alpha);
  CHECK(q2.lambda == Rational(1, 6) + Rational(1, 3) - 1);
  Vec<NFElem> inside(4, NFElem(0));
  inside[0] = two.w[1];
  inside[1] = -two.w[0];
  CHECK_THROWS_AS(assemble_inequality(two, inside), ContractError);
  Vec<NFElem> off(4, NFElem(1));
  CHECK_THROWS_AS(assemble_inequality(two, off), ContractError);
}

TEST_CASE("assemble_inequality on the computed partition-of-unity state") {
  std::vector<RationalFunction> pu{R("t"), R("1-t"), R("1")};
  auto st = run_claim_construction(pu, 12, at(5));
  // A full-support vector of w-perp stands in for a solution at P = 5.
  Vec<NFElem> generic{NFElem(1) / st.w[0], NFElem(1) / st.w[1], NFElem(-2) / st.w[2]};
  auto q = assemble_inequality(st, generic);
  MESSAGE("lambda = " << to_string(q.lambda) << ", tau slack = " << to_string(q.tau_slack));
  CHECK(q.lambda <= Rational(-1, 2) + q.tau_slack);
  CHECK(q.holds);
}

TEST_CASE("certify_solution examples") {
  std::vector<RationalFunction> pu{R("t"), R("1-t"), R("1")};
  std::vector<Rational> alpha{1, 1, -1};
  auto P = AlgebraicNumber::root_of(QPoly{1, -1, 1}, 0);
  auto rep = certify_solution(pu, alpha, 5, P);
  CHECK(rep.classification == Classification::certified);
  CHECK(rep.hP.hi < 1e-9);
  CHECK(rep.margin >= -1e-9);
  REQUIRE(rep.inequality);
  CHECK(rep.inequality->holds);
  CHECK(rep.point_minpoly == QPoly{1, -1, 1});
  CHECK(rep.csv_row().find("t^2-t+1") != std::string::npos);

  // n = 2: the only roots are the excluded points 0 and 1.
  for (long t : {0L, 1L}) CHECK(certify_solution(pu, alpha, 2, at(t)).classification == Classification::excluded_point);
  CHECK_THROWS_AS(certify_solution(pu, alpha, 2, at(3)), ContractError);

  std::vector<RationalFunction> same{R("t"), R("t")};
  std::vector<Rational> opp{1, -1};
  CHECK_THROWS_AS(certify_solution(same, opp, 3, at(2)), ContractError);
}

TEST_CASE("certify_solution reports vanishing subsums") {
  // At P = 1/2 the four terms are 1, -1, 1, -1.
  std::vector<RationalFunction> fs{R("2*t"), R("1"), R("t+1/2"), R("1")};
  std::vector<Rational> alpha{1, -1, 1, -1};
  auto rep = certify_solution(fs, alpha, 1, AlgebraicNumber::rational(Rational(1, 2)));
  CHECK(rep.classification == Classification::vanishing_subsum);
  CHECK(rep.vanishing_subsets == std::vector<IndexSet>{{0, 1}, {0, 3}, {1, 2}, {2, 3}});
}

TEST_CASE("claim construction with two stages") {
  std::vector<RationalFunction> fs{R("t^2"), R("t+1"), R("t-1"), R("1"), R("t^2+1")};
  auto st = run_claim_construction(fs, 3, at(7));
  CAPTURE(st.report());
  REQUIRE(st.s() == 2);
  CHECK(st.stages[0].lambda == IndexSet{1, 2, 3});
  CHECK(st.stages[1].J == IndexSet{1});
  CHECK(st.stages[1].phi == std::vector<int>{2, 2, 1, 1, 2});
  CHECK(st.stages[0].t == 2);
  CHECK(st.stages[1].t == 2);
  CHECK(st.violations().empty());
  for (const auto& s : st.stages) CHECK(s.claim_iv_slack <= 0);
}
