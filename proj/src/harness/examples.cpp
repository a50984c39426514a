#include <algorithm>
#include <array>
#include <iomanip>
#include <sstream>

#include "thue/exact/factor.hpp"
#include "thue/harness/harness.hpp"

namespace thue::harness {

using thue::to_string;

namespace {

// Elements of Q(w)[t][u]/(u^3 - (t^3 - 1)) as c_0 + c_1 u + c_2 u^2.
using TPoly = Poly<NFElem>;
using CubicElem = std::array<TPoly, 3>;

CubicElem mul(const CubicElem& a, const CubicElem& b) {
  static const TPoly D{NFElem(-1), NFElem(0), NFElem(0), NFElem(1)};
  std::array<TPoly, 5> c;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) c[i + j] += a[i] * b[j];
  return {c[0] + c[3] * D, c[1] + c[4] * D, c[2]};
}

CubicElem power(const CubicElem& a, unsigned n) {
  CubicElem r{TPoly::constant(NFElem(1)), TPoly(), TPoly()};
  for (unsigned k = 0; k < n; ++k) r = mul(r, a);
  return r;
}

std::string tpoly_text(const TPoly& p) {
  std::string s;
  for (int k = p.degree(); k >= 0; --k) {
    if (is_zero(p.coeff(k))) continue;
    if (!s.empty()) s += " + ";
    s += "(" + to_string(p.coeff(k), "w") + ")";
    if (k > 0) s += "*t" + (k > 1 ? "^" + std::to_string(k) : std::string());
  }
  return s;
}

std::string cubic_text(const CubicElem& e) {
  std::string s;
  for (int j = 0; j < 3; ++j) {
    if (e[j].is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += "[" + tpoly_text(e[j]) + "]";
    if (j > 0) s += "*u" + (j > 1 ? "^2" : std::string());
  }
  return s.empty() ? "0" : s;
}

bool integer_cube_root(const Integer& v, Integer& x) {
  return mpz_root(x.get_mpz_t(), v.get_mpz_t(), 3) != 0;
}

bool excluded_for(const QPoly& p, std::span<const RationalFunction> g) {
  for (const auto& f : g)
    if (p.divides(f.num()) || p.divides(f.den())) return true;
  return false;
}

Integer max_abs_coefficient(const QPoly& p) {
  Integer m = 0;
  for (const auto& c : integer_coefficients(p)) m = std::max(m, Integer(abs(c)));
  return m;
}

}  // namespace

std::string ThueReport::text() const {
  std::ostringstream o;
  for (const auto& [n, e] : conjugate_sums) o << "n=" << n << " conjugate sum: " << e << "\n";
  for (const auto& [t, x, y] : solutions) o << "solution t=" << t << " x=" << x << " y=" << y << "\n";
  for (const auto& f : failures) o << "FAILURE: " << f << "\n";
  return o.str();
}

ThueReport thue_suite(Range n, long t_box, long y_box) {
  ThueReport rep;
  auto K = NumberField::make(cyclotomic(3));
  NFElem w = NFElem::generator(K);
  const TPoly t = TPoly::x();
  for (unsigned k = 1; k <= n.hi; ++k) {
    CubicElem sum{TPoly(), TPoly(), TPoly()};
    NFElem wk(1);
    for (int j = 0; j < 3; ++j) {
      CubicElem lin{t, TPoly::constant(-wk), TPoly()};
      CubicElem p = power(lin, k);
      for (auto& c : p) c *= wk;
      for (int i = 0; i < 3; ++i) sum[i] += p[i];
      wk *= w;
    }
    bool zero = sum[0].is_zero() && sum[1].is_zero() && sum[2].is_zero();
    rep.conjugate_sums.emplace_back(k, cubic_text(sum));
    if (k == 1 && !zero) rep.failures.push_back("n=1: conjugate sum is not identically zero");
    if (k > 1 && zero) rep.failures.push_back("n=" + std::to_string(k) + ": conjugate sum vanishes identically");
  }
  // t = 1 makes the form degenerate (x^3 = 1 for every y) and is skipped.
  for (long tv = -t_box; tv <= t_box; ++tv) {
    if (tv == 1) continue;
    Integer c = Integer(tv) * tv * tv - 1;
    for (long y = -y_box; y <= y_box; ++y) {
      Integer v = 1 + c * y * y * y, x;
      if (!integer_cube_root(v, x)) continue;
      rep.solutions.emplace_back(tv, x.get_si(), y);
      bool known = (y == 0 && x == 1) || (y == 1 && x == tv);
      if (!known)
        rep.failures.push_back("unexpected solution t=" + std::to_string(tv) + " x=" + to_string(x) +
                               " y=" + std::to_string(y));
    }
  }
  return rep;
}

void RecurrenceSpec::validate() const {
  if (c.empty() || c.size() != u0.size()) throw ContractError("recurrence: need r coefficients and r initial terms");
  if (c.back().is_zero()) throw ContractError("recurrence: c_r must be nonzero");
  if (std::all_of(u0.begin(), u0.end(), [](const QPoly& p) { return p.is_zero(); }))
    throw ContractError("recurrence: initial data all zero");
  // chi(Z) = Z^r - c_1 Z^{r-1} - ... - c_r over Q(t).
  const std::size_t r = c.size();
  std::vector<RationalFunction> co(r + 1, RationalFunction(0));
  co[r] = RationalFunction(1);
  for (std::size_t i = 0; i < r; ++i) co[r - 1 - i] = -RationalFunction(c[i]);
  Poly<RationalFunction> chi(co);
  if (resultant(chi, chi.derivative()).is_zero())
    throw ContractError("recurrence: characteristic polynomial has multiple roots");
}

RecurrenceSpec chebyshev() {
  RecurrenceSpec s;
  s.c = {QPoly::x(), QPoly{Rational(-1)}};
  s.u0 = {QPoly{Rational(2)}, QPoly::x()};
  return s;
}

std::vector<QPoly> recurrence_terms(const RecurrenceSpec& spec, unsigned count) {
  spec.validate();
  std::vector<QPoly> u(spec.u0.begin(), spec.u0.end());
  const std::size_t r = spec.c.size();
  while (u.size() < count) {
    QPoly next;
    for (std::size_t i = 0; i < r; ++i) next += spec.c[i] * u[u.size() - 1 - i];
    u.push_back(next);
  }
  u.resize(count);
  return u;
}

std::string RecurrenceReport::text() const {
  std::string s;
  for (const auto& l : lines) s += l + "\n";
  return s;
}

RecurrenceReport recurrence_suite(const RecurrenceSpec& spec, Range n, int degree_bound) {
  auto u = recurrence_terms(spec, n.hi + 1);
  RecurrenceReport rep;
  for (unsigned k = n.lo; k <= n.hi; ++k) {
    if (u[k].is_zero()) {
      rep.lines.push_back("u_" + std::to_string(k) + " = 0");
      continue;
    }
    std::string line = "u_" + std::to_string(k) + " = " + to_string(u[k]) + ";";
    if (u[k].degree() > 0)
      for (const auto& f : factor(u[k]).factors) {
        if (f.poly.degree() > degree_bound) continue;
        RecurrenceZero z{k, f.poly, f.multiplicity, height_of_minpoly(f.poly)};
        line += " zeros of " + to_string(f.poly) + " (h=" + format_number(z.height.mid()) + ")";
        rep.zeros.push_back(z);
      }
    rep.lines.push_back(line);
  }
  return rep;
}

bool chebyshev_divides(unsigned q, unsigned m) {
  auto T = recurrence_terms(chebyshev(), m * q + 1);
  return T[q].divides(T[m * q]);
}

std::string UnlikelyReport::text() const {
  std::ostringstream o;
  for (auto n : contained) o << "n=" << n << ": [n]C lies in V, skipped\n";
  double best = -1;
  unsigned at = 0;
  for (const auto& r : rows)
    if (r.height.hi > best) best = r.height.hi, at = r.n;
  o << rows.size() << " points";
  if (!rows.empty()) o << "; max height " << format_number(best) << " first attained at n=" << at;
  o << "\n";
  return o.str();
}

std::string UnlikelyReport::to_csv() const {
  std::ostringstream o;
  o << "n,point-minpoly,root-index,point-height\n";
  for (const auto& r : rows)
    o << r.n << "," << to_string(r.minpoly) << "," << r.P.root_index << "," << format_number(r.height.mid())
      << "\n";
  return o.str();
}

UnlikelyReport unlikely_scan(std::span<const RationalFunction> g, const ff::Expr& V, Range n, HeightBound H,
                             int degree) {
  if (degree != 1 && degree != 2) throw ContractError("unlikely_scan: degree must be 1 or 2");
  UnlikelyReport rep;
  for (unsigned k = n.lo; k <= n.hi; ++k) {
    std::vector<RationalFunction> gn;
    for (const auto& f : g) gn.push_back(f.pow(k));
    auto var = [&](const std::string& name) -> RationalFunction {
      if (name.size() < 2 || name[0] != 'x') throw ContractError("V: unknown variable " + name);
      std::size_t i = std::stoul(name.substr(1));
      if (i < 1 || i > gn.size()) throw ContractError("V: variable " + name + " out of range");
      return gn[i - 1];
    };
    RationalFunction comp = ff::evaluate<RationalFunction>(V, var);
    if (comp.is_zero()) {
      rep.contained.push_back(k);
      continue;
    }
    if (comp.num().degree() <= 0) continue;
    for (const auto& f : factor(comp.num()).factors) {
      if (f.poly.degree() > degree || excluded_for(f.poly, g)) continue;
      if (max_abs_coefficient(f.poly) > H.B) continue;
      auto h = height_of_minpoly(f.poly);
      for (int i = 0; i < f.poly.degree(); ++i) {
        auto P = f.poly.degree() == 1 ? AlgebraicNumber::rational(-f.poly.coeff(0) / f.poly.coeff(1))
                                      : AlgebraicNumber::root_of(f.poly, i, true);
        rep.rows.push_back({k, P, f.poly, h});
      }
    }
  }
  return rep;
}

bool on_unlikely_locus(std::span<const RationalFunction> g, const ff::Expr& V, unsigned n, const AlgebraicNumber& P) {
  std::vector<NFElem> vals;
  for (const auto& f : g) {
    NFElem v = f.eval(P.value);
    if (is_zero(v)) throw ContractError("on_unlikely_locus: P is a zero of some g_i");
    vals.push_back(v.pow(n));
  }
  auto var = [&](const std::string& name) -> NFElem { return vals.at(std::stoul(name.substr(1)) - 1); };
  return is_zero(ff::evaluate<NFElem>(V, var));
}

}  // namespace thue::harness
