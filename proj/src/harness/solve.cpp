#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "thue/exact/factor.hpp"
#include "thue/harness/harness.hpp"

namespace thue::harness {

using thue::to_string;

HeightBound HeightBound::from_log(double H) {
  if (!(H >= 0)) throw ContractError("height bound must be non-negative");
  return {static_cast<long>(std::floor(std::exp(H) + 1e-9))};
}

double HeightBound::log_value() const { return std::log(static_cast<double>(B)); }

std::vector<AlgebraicNumber> enumerate_points(HeightBound H, int degree) {
  std::vector<AlgebraicNumber> out;
  if (degree == 1) {
    for (const auto& q : rationals_up_to(H.B)) out.push_back(AlgebraicNumber::rational(q));
    return out;
  }
  if (degree != 2) throw ContractError("enumerate_points: degree must be 1 or 2");
  const long B = H.B;
  for (long a = 1; a <= B; ++a)
    for (long b = -B; b <= B; ++b)
      for (long c = -B; c <= B; ++c) {
        if (c == 0 || std::gcd(std::gcd(a, b), c) != 1) continue;
        long disc = b * b - 4 * a * c;
        if (disc >= 0) {
          long s = static_cast<long>(std::llround(std::sqrt(static_cast<double>(disc))));
          if (s * s == disc) continue;
        }
        QPoly m{Rational(c), Rational(b), Rational(a)};
        for (int k = 0; k < 2; ++k) out.push_back(AlgebraicNumber::root_of(m, k, true));
      }
  return out;
}

namespace {

bool is_excluded(const QPoly& p, std::span<const RationalFunction> fs) {
  for (const auto& f : fs)
    if (p.divides(f.num()) || p.divides(f.den())) return true;
  return false;
}

std::string fmt(double x) { return format_number(x); }

std::string join_alpha(const std::vector<Rational>& alpha) {
  std::string s;
  for (std::size_t i = 0; i < alpha.size(); ++i) s += (i ? ";" : "") + to_string(alpha[i]);
  return s;
}

std::string subsets_text(const std::vector<descent::IndexSet>& sets) {
  std::string s;
  for (const auto& set : sets) {
    s += s.empty() ? "{" : " {";
    for (std::size_t k = 0; k < set.size(); ++k) s += (k ? " " : "") + std::to_string(set[k] + 1);
    s += "}";
  }
  return s;
}

}  // namespace

PowerEquation solve_power_equation(std::span<const RationalFunction> fs, std::span<const Rational> alpha, unsigned n) {
  if (fs.size() != alpha.size()) throw ContractError("solve_power_equation: |fs| != |alpha|");
  RationalFunction combo;
  for (std::size_t i = 0; i < fs.size(); ++i) combo += RationalFunction(alpha[i]) * fs[i].pow(n);
  if (combo.is_zero()) throw ContractError("identical-relation");
  PowerEquation eq;
  eq.cleared = primitive_part(combo.num());
  if (eq.cleared.degree() <= 0) return eq;
  auto fac = factor(eq.cleared);
  for (const auto& f : fac.factors) {
    SolutionFactor s;
    s.poly = f.poly;
    s.multiplicity = f.multiplicity;
    s.proven_irreducible = f.proven_irreducible;
    s.evaluated = f.poly.degree() <= 2;
    s.excluded = is_excluded(f.poly, fs);
    eq.factors.push_back(s);
  }
  return eq;
}

void merge_proportional(std::vector<RationalFunction>& fs, std::vector<Rational>& alpha, unsigned n) {
  std::vector<RationalFunction> mf;
  std::vector<Rational> ma;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    bool merged = false;
    for (std::size_t j = 0; j < mf.size() && !merged; ++j) {
      RationalFunction q = fs[i] / mf[j];
      if (!q.is_constant()) continue;
      Rational c = q.constant_value(), cn = 1;
      for (unsigned k = 0; k < n; ++k) cn *= c;
      ma[j] += alpha[i] * cn;
      merged = true;
    }
    if (!merged) {
      mf.push_back(fs[i]);
      ma.push_back(alpha[i]);
    }
  }
  fs.clear();
  alpha.clear();
  for (std::size_t j = 0; j < mf.size(); ++j)
    if (sgn(ma[j])) {
      fs.push_back(mf[j]);
      alpha.push_back(ma[j]);
    }
}

std::string to_string(RowClass c) {
  switch (c) {
    case RowClass::certified:
      return "certified";
    case RowClass::excluded_point:
      return "excluded-point";
    case RowClass::vanishing_subsum:
      return "vanishing-subsum";
    case RowClass::identical_relation:
      return "identical-relation";
  }
  return "?";
}

std::string ResultRow::csv_header() {
  return "family-id,n,alpha,alpha-height,point-minpoly,multiplicity,point-height,bound,margin,classification,detail";
}

std::string ResultRow::csv_row() const {
  bool none = minpoly.is_zero();
  return family + "," + std::to_string(n) + "," + join_alpha(alpha) + "," + fmt(alpha_height) + "," +
         (none ? "" : to_string(minpoly)) + "," + std::to_string(multiplicity) + "," + (none ? "" : fmt(height.mid())) +
         "," + (none ? "" : fmt(bound)) + "," + (none ? "" : fmt(margin)) + "," + to_string(classification) + "," +
         detail;
}

void sort_rows(std::vector<ResultRow>& rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
    if (a.family != b.family) return a.family < b.family;
    if (a.n != b.n) return a.n < b.n;
    if (a.alpha != b.alpha) return a.alpha < b.alpha;
    if (a.minpoly.degree() != b.minpoly.degree()) return a.minpoly.degree() < b.minpoly.degree();
    const auto &ca = a.minpoly.coeffs(), &cb = b.minpoly.coeffs();
    return std::lexicographical_compare(ca.rbegin(), ca.rend(), cb.rbegin(), cb.rend());
  });
}

std::string to_csv(const std::vector<ResultRow>& rows) {
  std::string out = ResultRow::csv_header() + "\n";
  for (const auto& r : rows) out += r.csv_row() + "\n";
  return out;
}

std::vector<ResultRow> solve_and_certify(const std::string& family, std::span<const RationalFunction> fs,
                                         std::span<const Rational> alpha, unsigned n, const SolveOptions& opt,
                                         const descent::DescentState* skeleton) {
  std::vector<ResultRow> rows;
  ResultRow base;
  base.family = family;
  base.n = n;
  base.alpha.assign(alpha.begin(), alpha.end());
  base.alpha_height = projective_height(alpha).mid();
  PowerEquation eq;
  try {
    eq = solve_power_equation(fs, alpha, n);
  } catch (const ContractError& e) {
    if (std::string(e.what()) != "identical-relation") throw;
    base.classification = RowClass::identical_relation;
    rows.push_back(base);
    return rows;
  }
  for (const auto& f : eq.factors) {
    if (!f.proven_irreducible) throw InternalError("solve: unfactored part " + to_string(f.poly));
    ResultRow row = base;
    row.minpoly = f.poly;
    row.multiplicity = f.multiplicity;
    row.bound = static_cast<double>(fs.size()) * projective_height(alpha).hi / n;
    if (fs.size() < 2) {
      // A single term vanishes only at zeros of its function.
      row.classification = RowClass::excluded_point;
      row.height = height_of_minpoly(f.poly);
      row.margin = row.bound + opt.C - row.height.hi;
      rows.push_back(row);
      continue;
    }
    auto P = f.poly.degree() == 1 ? AlgebraicNumber::rational(-f.poly.coeff(0) / f.poly.coeff(1))
                                  : AlgebraicNumber::root_of(f.poly, 0, true);
    auto rep = descent::certify_solution(fs, alpha, n, P, opt.C, skeleton);
    row.height = rep.hP;
    row.bound = rep.bound;
    row.margin = rep.margin;
    switch (rep.classification) {
      case descent::Classification::certified:
        row.classification = RowClass::certified;
        row.detail = "inequality-margin=" + to_string(rep.inequality->margin) +
                     (rep.inequality->holds ? "" : " inequality-fails");
        break;
      case descent::Classification::excluded_point:
        row.classification = RowClass::excluded_point;
        break;
      case descent::Classification::vanishing_subsum:
        row.classification = RowClass::vanishing_subsum;
        row.detail = subsets_text(rep.vanishing_subsets);
        break;
    }
    rows.push_back(row);
  }
  return rows;
}

std::string format_number(double x) {
  std::ostringstream o;
  o << std::setprecision(12) << (std::abs(x) < 1e-12 ? 0.0 : x);
  return o.str();
}

double fitted_constant(std::span<const ResultRow> rows) {
  double c = 0;
  for (const auto& r : rows)
    if (r.classification == RowClass::certified) c = std::max(c, r.height.hi - r.bound);
  return c;
}

Range parse_range(const std::string& text) {
  auto dots = text.find("..");
  auto num = [&](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw ContractError("range '" + text + "': expected a..b with naturals");
    return static_cast<unsigned>(std::stoul(s));
  };
  Range r;
  if (dots == std::string::npos) {
    r.lo = r.hi = num(text);
  } else {
    r.lo = num(text.substr(0, dots));
    r.hi = num(text.substr(dots + 2));
  }
  if (r.lo > r.hi) throw ContractError("range '" + text + "' is empty");
  if (r.lo == 0) throw ContractError("range '" + text + "': n must be at least 1");
  return r;
}

}  // namespace thue::harness
