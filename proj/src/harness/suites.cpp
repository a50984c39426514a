#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "thue/harness/harness.hpp"

namespace thue::harness {

namespace {

RationalFunction R(const char* s) { return RationalFunction::parse(s); }

std::string fmt(double x) { return format_number(x); }

descent::DescentConfig certify_config() {
  descent::DescentConfig cfg;
  cfg.wronskian_bases = false;
  return cfg;
}

long count_class(const std::vector<ResultRow>& rows, RowClass c) {
  return std::count_if(rows.begin(), rows.end(), [&](const ResultRow& r) { return r.classification == c; });
}

void class_notes(SuiteReport& rep) {
  for (auto c : {RowClass::certified, RowClass::excluded_point, RowClass::vanishing_subsum, RowClass::identical_relation})
    rep.notes.push_back(to_string(c) + " rows: " + std::to_string(count_class(rep.rows, c)));
}

void check_inequalities(SuiteReport& rep) {
  for (const auto& r : rep.rows)
    if (r.classification == RowClass::certified && r.detail.find("inequality-fails") != std::string::npos)
      rep.failures.push_back("n=" + std::to_string(r.n) + " " + to_string(r.minpoly) + ": inequality fails");
}

}  // namespace

std::string SuiteReport::summary() const {
  std::string s;
  for (const auto& n : notes) s += n + "\n";
  for (const auto& f : failures) s += "FAILURE: " + f + "\n";
  return s;
}

std::vector<std::vector<Rational>> random_beukers_alphas(std::size_t count, long height_bound, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> co(-height_bound, height_bound);
  std::vector<std::vector<Rational>> out;
  while (out.size() < count) {
    long a = co(rng), b = co(rng), c = co(rng);
    if (!a || !b || !c || std::gcd(std::gcd(a, b), c) != 1) continue;
    out.push_back({Rational(a), Rational(b), Rational(-c)});
  }
  return out;
}

SuiteReport beukers_suite(const std::vector<std::vector<Rational>>& alphas, Range n, const SolveOptions& opt) {
  std::vector<RationalFunction> fs{R("t"), R("1-t"), R("1")};
  SuiteReport rep;
  std::map<unsigned, double> max_h, max_bound;
  for (unsigned k = n.lo; k <= n.hi; ++k) {
    auto skel = descent::build_skeleton(fs, k, certify_config());
    for (const auto& a : alphas) {
      auto rows = solve_and_certify("beukers", fs, a, k, opt, &skel);
      for (auto& r : rows) {
        if (r.classification == RowClass::certified) {
          max_h[k] = std::max(max_h[k], r.height.hi);
          max_bound[k] = std::max(max_bound[k], r.bound);
        }
        rep.rows.push_back(std::move(r));
      }
    }
  }
  sort_rows(rep.rows);
  double C = fitted_constant(rep.rows);
  class_notes(rep);
  rep.notes.push_back("fitted C = " + fmt(C));
  for (const auto& [k, h] : max_h) {
    rep.notes.push_back("n=" + std::to_string(k) + " max certified height " + fmt(h) + " envelope " +
                        fmt(max_bound[k] + C));
    if (h > max_bound[k] + C + 1e-9) rep.failures.push_back("n=" + std::to_string(k) + ": max height above envelope");
  }
  check_inequalities(rep);
  return rep;
}

SuiteReport denz_suite(Range n, HeightBound H) {
  std::vector<RationalFunction> fs{R("t"), R("1-t"), R("1+t"), R("1")};
  std::vector<Rational> alpha{1, 1, 1, -1};
  SuiteReport rep;
  for (unsigned k = n.lo; k <= n.hi; ++k) {
    auto rows = solve_and_certify("denz", fs, alpha, k);
    rep.rows.insert(rep.rows.end(), rows.begin(), rows.end());
  }
  sort_rows(rep.rows);
  const double cap = 856 * std::log(2.0);
  long small = 0, within_H = 0;
  double max_h = 0;
  for (const auto& r : rep.rows) {
    if (r.classification != RowClass::certified || r.minpoly.degree() > 2) continue;
    ++small;
    if (r.height.hi <= H.log_value() + 1e-12) ++within_H;
    max_h = std::max(max_h, r.height.hi);
    if (r.height.hi > cap)
      rep.failures.push_back("n=" + std::to_string(r.n) + " " + to_string(r.minpoly) + ": height above 856 log 2");
  }
  class_notes(rep);
  rep.notes.push_back("certified solutions of degree <= 2: " + std::to_string(small) + ", of which " +
                      std::to_string(within_H) + " within H = log " + std::to_string(H.B));
  rep.notes.push_back("max height among them " + fmt(max_h) + " <= 856 log 2 = " + fmt(cap));
  check_inequalities(rep);
  return rep;
}

SuiteReport amzex_suite(unsigned box, HeightBound H) {
  reduction::SubgroupPresentation gamma;
  gamma.r = 3;
  gamma.generators = {{R("t"), R("1"), R("1")}, {R("1-t"), R("1"), R("1")}, {R("1"), R("t"), R("1")},
                      {R("1"), R("1"), R("1+t")}};
  SuiteReport rep;
  auto verdict = reduction::is_constant_free(gamma, 3);
  rep.notes.push_back("presentation: " + verdict.describe());
  double max_h = 0;
  long within_H = 0;
  for (unsigned a = 0; a <= box; ++a)
    for (unsigned b = 0; b <= box; ++b)
      for (unsigned c = 0; c <= box; ++c)
        for (unsigned d = 0; d <= box; ++d) {
          std::vector<Integer> lam{a, b, c, d};
          auto x = reduction::element(gamma, lam);
          std::vector<RationalFunction> fs{x[0], x[1], x[2], RationalFunction(1)};
          std::vector<Rational> alpha{1, 1, 1, -1};
          merge_proportional(fs, alpha, 1);
          std::string id = "amzex(" + std::to_string(a) + ";" + std::to_string(b) + ";" + std::to_string(c) + ";" +
                           std::to_string(d) + ")";
          for (auto& r : solve_and_certify(id, fs, alpha, 1)) {
            if (r.classification == RowClass::certified) {
              max_h = std::max(max_h, r.height.hi);
              if (r.height.hi <= H.log_value() + 1e-12) ++within_H;
            }
            rep.rows.push_back(std::move(r));
          }
        }
  sort_rows(rep.rows);
  class_notes(rep);
  rep.notes.push_back("max certified height " + fmt(max_h) + "; certified within H = log " + std::to_string(H.B) +
                      ": " + std::to_string(within_H));
  check_inequalities(rep);
  return rep;
}

}  // namespace thue::harness
