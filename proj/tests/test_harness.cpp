#include <cmath>
#include <numeric>
#include <set>

#include "doctest.h"
#include "thue/harness/harness.hpp"
#include "thue/harness/manifest.hpp"

using namespace thue;
using namespace thue::harness;
using thue::to_string;

namespace {

RationalFunction R(const char* s) { return RationalFunction::parse(s); }

const std::vector<RationalFunction>& beukers_fs() {
  static const std::vector<RationalFunction> fs{R("t"), R("1-t"), R("1")};
  return fs;
}

std::vector<QPoly> factor_polys(const PowerEquation& eq) {
  std::vector<QPoly> v;
  for (const auto& f : eq.factors) v.push_back(f.poly);
  return v;
}

bool satisfies(std::span<const RationalFunction> fs, std::span<const Rational> alpha, unsigned n,
               const AlgebraicNumber& P) {
  NFElem s(0);
  for (std::size_t i = 0; i < fs.size(); ++i) s += NFElem(alpha[i]) * fs[i].eval(P.value).pow(n);
  return is_zero(s);
}

}  // namespace

TEST_CASE("enumerate_points examples") {
  auto one = enumerate_points(HeightBound::from_log(std::log(2.0)), 1);
  std::set<Rational> got;
  for (const auto& p : one) got.insert(p.value.to_rational());
  CHECK(got == std::set<Rational>{0, 1, -1, 2, -2, Rational(1, 2), Rational(-1, 2)});
  CHECK(one.size() == got.size());
  CHECK(enumerate_points(HeightBound::from_log(0), 1).size() == 3);

  auto two = enumerate_points(HeightBound::log_of(2), 2);
  std::set<std::string> minpolys;
  for (const auto& p : two) minpolys.insert(to_string(minimal_polynomial(p.value)));
  for (const char* m : {"t^2+1", "t^2-2", "t^2-t-1"}) CHECK(minpolys.count(m) == 1);
  // Two roots per quadratic and no duplicates.
  CHECK(two.size() == 2 * minpolys.size());
  CHECK_THROWS_AS(enumerate_points(HeightBound::log_of(2), 3), ContractError);
}

TEST_CASE("enumerate_points degree 1 matches the Farey count") {
  for (long B = 1; B <= 30; ++B) {
    std::size_t oracle = 0;
    for (long q = 1; q <= B; ++q)
      for (long p = -B; p <= B; ++p)
        if (std::gcd(p, q) == 1) ++oracle;
    CHECK(enumerate_points(HeightBound::log_of(B), 1).size() == oracle);
  }
}

TEST_CASE("solve_power_equation examples") {
  std::vector<Rational> a{1, 1, -1};
  auto b5 = solve_power_equation(beukers_fs(), a, 5);
  // -5 t (t - 1) (t^2 - t + 1), sorted by degree then coefficients.
  CHECK(factor_polys(b5) == std::vector<QPoly>{QPoly{-1, 1}, QPoly{0, 1}, QPoly{1, -1, 1}});
  CHECK(b5.factors[0].excluded);
  CHECK(b5.factors[1].excluded);
  CHECK_FALSE(b5.factors[2].excluded);
  CHECK(b5.factors[2].evaluated);

  std::vector<RationalFunction> denz{R("t"), R("1-t"), R("1+t"), R("1")};
  std::vector<Rational> d{1, 1, 1, -1};
  auto d2 = solve_power_equation(denz, d, 2);
  REQUIRE(d2.factors.size() == 1);
  CHECK(d2.factors[0].poly == QPoly{1, 0, 3});
  auto h = height_of_minpoly(d2.factors[0].poly);
  CHECK(std::abs(h.mid() - std::log(3.0) / 2) < 1e-9);
  auto d1 = solve_power_equation(denz, d, 1);
  REQUIRE(d1.factors.size() == 1);
  CHECK(d1.factors[0].poly == QPoly{1, 1});
  CHECK(d1.factors[0].excluded);

  CHECK_THROWS_WITH_AS(solve_power_equation(beukers_fs(), a, 1), "identical-relation", ContractError);
  auto d7 = solve_power_equation(denz, d, 7);
  CHECK_FALSE(d7.factors.back().evaluated);
}

TEST_CASE("solve_power_equation agrees with point enumeration on the Beukers family") {
  auto rationals = enumerate_points(HeightBound::log_of(50), 1);
  auto quadratics = enumerate_points(HeightBound::log_of(4), 2);
  std::vector<std::vector<Rational>> alphas{{1, 1, -1}, {1, -1, -1}, {2, 1, -3}, {3, -2, -1}, {1, 1, -2}};
  for (const auto& a : alphas)
    for (unsigned n = 2; n <= 8; ++n) {
      auto eq = solve_power_equation(beukers_fs(), a, n);
      auto solver_has = [&](const QPoly& m) {
        for (const auto& f : eq.factors)
          if (f.poly == m) return true;
        return false;
      };
      for (const auto& P : rationals) {
        bool hit = satisfies(beukers_fs(), a, n, P);
        CHECK(hit == solver_has(minimal_polynomial(P.value)));
      }
      for (const auto& P : quadratics) {
        bool hit = satisfies(beukers_fs(), a, n, P);
        CHECK(hit == solver_has(minimal_polynomial(P.value)));
      }
    }
}

TEST_CASE("Beukers suite examples") {
  std::vector<RationalFunction> fs = beukers_fs();
  std::vector<Rational> a{1, 1, -1};
  auto n1 = solve_and_certify("beukers", fs, a, 1);
  REQUIRE(n1.size() == 1);
  CHECK(n1[0].classification == RowClass::identical_relation);

  auto n3 = solve_and_certify("beukers", fs, a, 3);
  REQUIRE(n3.size() == 2);
  for (const auto& r : n3) CHECK(r.classification == RowClass::excluded_point);

  auto n5 = solve_and_certify("beukers", fs, a, 5);
  bool found = false;
  for (const auto& r : n5)
    if (r.classification == RowClass::certified) {
      CHECK(r.minpoly == QPoly{1, -1, 1});
      CHECK(r.height.hi < 1e-9);
      found = true;
    }
  CHECK(found);

  auto rep = beukers_suite(random_beukers_alphas(12, 100, 7), {2, 7});
  CAPTURE(rep.summary());
  CHECK(rep.ok());
  // Every certified row re-certifies without the shared skeleton.
  long certified = 0;
  for (const auto& r : rep.rows) {
    if (r.classification == RowClass::vanishing_subsum) CHECK_FALSE(r.detail.empty());
    if (r.classification != RowClass::certified) continue;
    ++certified;
    auto P = r.minpoly.degree() == 1 ? AlgebraicNumber::rational(-r.minpoly.coeff(0) / r.minpoly.coeff(1))
                                     : AlgebraicNumber::root_of(r.minpoly, 0, true);
    auto again = descent::certify_solution(fs, r.alpha, r.n, P);
    CHECK(again.classification == descent::Classification::certified);
  }
  CHECK(certified > 0);
}

TEST_CASE("Beukers rows are deterministic") {
  auto alphas = random_beukers_alphas(6, 100, 3);
  CHECK(alphas == random_beukers_alphas(6, 100, 3));
  for (const auto& a : alphas) CHECK(projective_height(a).hi <= std::log(100.0) + 1e-12);
  auto x = to_csv(beukers_suite(alphas, {2, 5}).rows);
  auto y = to_csv(beukers_suite(alphas, {2, 5}).rows);
  CHECK(x == y);
}

TEST_CASE("Denz suite") {
  auto rep = denz_suite({1, 10}, HeightBound::log_of(10000));
  CAPTURE(rep.summary());
  CHECK(rep.ok());
  bool n2 = false;
  for (const auto& r : rep.rows) {
    if (r.n == 1) {
      CHECK(r.classification == RowClass::excluded_point);
      CHECK(r.minpoly == QPoly{1, 1});
    }
    if (r.n == 2) {
      n2 = true;
      CHECK(r.minpoly == QPoly{1, 0, 3});
      CHECK(r.classification == RowClass::certified);
      CHECK(std::abs(r.height.mid() - std::log(3.0) / 2) < 1e-9);
    }
    if (r.n == 4) CHECK(r.minpoly == QPoly{1, 0, 12, 0, 3});
  }
  CHECK(n2);
}

TEST_CASE("merge_proportional") {
  std::vector<RationalFunction> fs{R("t"), R("1"), R("2*t"), R("1")};
  std::vector<Rational> a{1, 1, 1, -1};
  merge_proportional(fs, a, 2);
  CHECK(fs == std::vector<RationalFunction>{R("t")});
  CHECK(a == std::vector<Rational>{5});
}

TEST_CASE("amzex suite") {
  auto rep = amzex_suite(1, HeightBound::log_of(100));
  CAPTURE(rep.summary());
  CHECK(rep.ok());
  bool zero_rows = false, one_certified = false;
  for (const auto& r : rep.rows) {
    if (r.family == "amzex(0;0;0;0)") zero_rows = true;
    if (r.family == "amzex(1;0;0;0)") {
      CHECK(r.minpoly == QPoly{1, 1});
      CHECK(r.classification == RowClass::certified);
      CHECK(r.height.hi < 1e-12);
      one_certified = true;
    }
  }
  CHECK_FALSE(zero_rows);
  CHECK(one_certified);
}

TEST_CASE("Thue family") {
  auto rep = thue_suite({1, 6}, 20, 50);
  CAPTURE(rep.text());
  CHECK(rep.failures.empty());
  REQUIRE(rep.conjugate_sums.size() == 6);
  CHECK(rep.conjugate_sums[0].second == "0");
  for (std::size_t k = 1; k < 6; ++k) CHECK(rep.conjugate_sums[k].second != "0");
  // (1, 0) and (t, 1) for each of the 40 admissible t, with t = 0 giving (0, 1).
  CHECK(rep.solutions.size() == 80);
}

TEST_CASE("Chebyshev divisibility and recurrences") {
  auto T = recurrence_terms(chebyshev(), 10);
  CHECK(T[3] == QPoly{0, -3, 0, 1});
  for (unsigned q : {1u, 3u, 5u})
    for (unsigned m : {3u, 5u}) CHECK(chebyshev_divides(q, m));
  CHECK_FALSE(chebyshev_divides(2, 2));

  RecurrenceSpec fib;
  fib.c = {QPoly::x(), QPoly{Rational(1)}};
  fib.u0 = {QPoly{Rational(1)}, QPoly::x()};
  auto rep = recurrence_suite(fib, {2, 8}, 2);
  CAPTURE(rep.text());
  CHECK(rep.lines.size() == 7);
  // u_2 = t^2 + 1.
  REQUIRE_FALSE(rep.zeros.empty());
  CHECK(rep.zeros[0].n == 2);
  CHECK(rep.zeros[0].minpoly == QPoly{1, 0, 1});
  for (const auto& z : rep.zeros) CHECK(z.minpoly.degree() <= 2);

  RecurrenceSpec repeated;
  repeated.c = {QPoly{0, 2}, QPoly{0, 0, -1}};
  repeated.u0 = {QPoly{Rational(1)}, QPoly::x()};
  CHECK_THROWS_AS(repeated.validate(), ContractError);
}

TEST_CASE("unlikely_scan") {
  std::vector<RationalFunction> C{R("t"), R("1-t")};
  auto V = ff::parse_expr("x1+x2-1");
  auto rep = unlikely_scan(C, *V, {1, 5}, HeightBound::log_of(100), 2);
  CHECK(rep.contained == std::vector<unsigned>{1});
  std::set<unsigned> ns;
  for (const auto& r : rep.rows) {
    ns.insert(r.n);
    CHECK(on_unlikely_locus(C, *V, r.n, r.P));
  }
  // n = 4: 2t(t - 1)(t^2 - t + 2); n = 5: roots of t^2 - t + 1.
  CHECK(ns == std::set<unsigned>{4, 5});
  CHECK(rep.rows.size() == 4);

  auto deg1 = unlikely_scan(C, *V, {3, 3}, HeightBound::log_of(100), 1);
  CHECK(deg1.rows.empty());

  // Oracle: every enumerated rational point off the zeros and poles.
  for (unsigned n = 2; n <= 6; ++n) {
    auto scan = unlikely_scan(C, *V, {n, n}, HeightBound::log_of(20), 1);
    std::size_t hits = 0;
    for (const auto& P : enumerate_points(HeightBound::log_of(20), 1)) {
      Rational p = P.value.to_rational();
      if (p == 0 || p == 1) continue;
      if (on_unlikely_locus(C, *V, n, P)) ++hits;
    }
    CHECK(scan.rows.size() == hits);
  }
}

TEST_CASE("manifest parsing") {
  auto m = parse_manifest(R"({"schema": 1, "family": "beuk", "coordinate": "z",
    "functions": ["z", "1-z", "1"], "alpha": [1, "2/3", -1], "n": "2..8", "H": "log 100", "degree": 2,
    "points": ["3", {"minpoly": "z^2-z+1", "root": 1}], "flags": {"K": 12, "height_cap": true}})");
  CHECK(m.family == "beuk");
  CHECK(m.functions[1] == R("1-t"));
  CHECK((*m.alpha)[1] == Rational(2, 3));
  CHECK(m.n.lo == 2);
  CHECK(m.n.hi == 8);
  CHECK(m.H->B == 100);
  CHECK(m.points[0].point().value == NFElem(3));
  CHECK(m.points[1].minpoly == QPoly{1, -1, 1});
  CHECK(m.K == 12);
  CHECK(m.height_cap);

  auto sweep = parse_manifest(R"({"schema": 1, "functions": ["t", "1-t", "1"], "alpha": {"sweep": {"count": 5}}})");
  REQUIRE(sweep.sweep);
  CHECK(sweep.sweep->count == 5);

  auto message = [](const std::string& text) {
    try {
      parse_manifest(text, "m.json");
    } catch (const ContractError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message("{\"schema\": 1,\n  \"functions\": [\"t\",]}") == "m.json: line 2, column 21: malformed JSON");
  CHECK(message(R"({"schema": 1, "functions": ["t", "1-s"]})").find("field 'functions[1]'") != std::string::npos);
  CHECK(message(R"({"schema": 2})").find("field 'schema'") != std::string::npos);
  CHECK(message(R"({"schema": 1, "functions": ["t", "1"], "alpha": [1]})").find("field 'alpha'") !=
        std::string::npos);
  CHECK(message(R"({"schema": 1, "flags": {"bogus": 1}})").find("field 'flags.bogus'") != std::string::npos);
  CHECK(message(R"({"schema": 1, "colour": 1})").find("field 'colour'") != std::string::npos);
  CHECK(message(R"({"schema": 1, "H": 0})").find("field 'H'") != std::string::npos);
}
