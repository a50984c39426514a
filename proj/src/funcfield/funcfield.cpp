#include "thue/funcfield/funcfield.hpp"

#include <functional>
#include <set>

#include "thue/exact/factor.hpp"

namespace thue::ff {

Place Place::at(const Rational& q) {
  Place p;
  p.infinite_ = false;
  p.poly_ = QPoly{Rational(-q.get_num()), Rational(q.get_den())};
  return p;
}

Place Place::of(const AlgebraicNumber& P) {
  if (P.is_rational()) return at(P.value.to_rational());
  return finite(minimal_polynomial(P.value));
}

Place Place::finite(const QPoly& irreducible) {
  if (irreducible.degree() < 1) throw ContractError("place polynomial must have positive degree");
  Place p;
  p.infinite_ = false;
  p.poly_ = primitive_part(irreducible);
  return p;
}

std::optional<Rational> Place::rational_point() const {
  if (infinite_ || poly_.degree() != 1) return std::nullopt;
  return -poly_.coeff(0) / poly_.coeff(1);
}

std::string Place::to_string() const {
  if (infinite_) return "inf";
  if (auto q = rational_point()) return "t=" + thue::to_string(*q);
  return thue::to_string(poly_, "t");
}

bool operator<(const Place& a, const Place& b) {
  if (a.infinite_ != b.infinite_) return !a.infinite_;
  if (a.infinite_) return false;
  if (a.poly_.degree() != b.poly_.degree()) return a.poly_.degree() < b.poly_.degree();
  // Rational places ordered by their point; others by coefficients.
  if (a.poly_.degree() == 1) return *a.rational_point() < *b.rational_point();
  const auto& x = a.poly_.coeffs();
  const auto& y = b.poly_.coeffs();
  for (std::size_t i = x.size(); i-- > 0;)
    if (x[i] != y[i]) return x[i] < y[i];
  return false;
}

long degree(const Divisor& d) {
  long s = 0;
  for (const auto& [v, ord] : d) s += ord * v.degree();
  return s;
}

namespace {

long multiplicity(QPoly p, const QPoly& q) {
  long m = 0;
  while (!p.is_zero()) {
    auto [quo, rem] = p.divmod(q);
    if (!rem.is_zero()) break;
    p = std::move(quo);
    ++m;
  }
  return m;
}

void add_places(const QPoly& p, std::set<Place>& out) {
  if (p.degree() < 1) return;
  auto fz = factor(p);
  if (!fz.complete()) throw InternalError("divisor: factorisation incomplete for " + thue::to_string(p, "t"));
  for (const auto& f : fz.factors) out.insert(Place::finite(f.poly));
}

}  // namespace

long order_at(const RationalFunction& f, const Place& v) {
  if (f.is_zero()) throw ContractError("order of the zero function is +infinity");
  if (v.is_infinite()) return f.den().degree() - f.num().degree();
  return multiplicity(f.num(), v.poly()) - multiplicity(f.den(), v.poly());
}

Divisor divisor(const RationalFunction& f) {
  if (f.is_zero()) throw ContractError("divisor of the zero function");
  std::set<Place> places;
  add_places(f.num(), places);
  add_places(f.den(), places);
  places.insert(Place::infinity());
  Divisor d;
  for (const auto& v : places) {
    long o = order_at(f, v);
    if (o != 0) d[v] = o;
  }
  return d;
}

JointDivisor joint_divisor(std::span<const RationalFunction> fs) {
  if (fs.empty()) throw ContractError("joint_divisor: empty list");
  std::set<Place> places;
  bool any = false;
  for (const auto& f : fs) {
    if (f.is_zero()) continue;
    any = true;
    add_places(f.num(), places);
    add_places(f.den(), places);
  }
  if (!any) throw ContractError("joint_divisor: all functions are zero");
  places.insert(Place::infinity());
  JointDivisor jd;
  for (const auto& v : places) {
    bool first = true;
    long m = 0;
    for (const auto& f : fs) {
      if (f.is_zero()) continue;
      long o = order_at(f, v);
      if (first || o < m) m = o;
      first = false;
    }
    if (m != 0) jd.divisor[v] = m;
  }
  jd.degree = degree(jd.divisor);
  jd.d = -jd.degree;
  return jd;
}

RationalFunction divided_derivative(const RationalFunction& f, unsigned l) {
  RationalFunction g = f;
  for (unsigned i = 0; i < l; ++i) g = g.derivative();
  if (l > 1) g *= RationalFunction(Rational(1, factorial(l)));
  return g;
}

FaaDiBrunoExpansion faa_di_bruno_power(const RationalFunction& f, unsigned n, unsigned l) {
  FaaDiBrunoExpansion out;
  std::vector<RationalFunction> deltas(l + 1);
  for (unsigned k = 0; k <= l; ++k) deltas[k] = divided_derivative(f, k);
  const Integer nfact = factorial(n);
  std::vector<unsigned> a(l + 1, 0);
  RationalFunction inner;
  out.coefficient_total = 0;
  // Enumerate a_l, ..., a_1 by weight, then a_0 is forced by |a| = l.
  std::function<void(unsigned, unsigned, unsigned)> rec = [&](unsigned k, unsigned weight_left, unsigned count) {
    if (k == 0) {
      if (weight_left != 0 || count > l) return;
      a[0] = l - count;
      Integer c = 0;
      long top = static_cast<long>(a[0]) + static_cast<long>(n) - static_cast<long>(l);
      if (top >= 0) {
        Integer den = factorial(static_cast<unsigned long>(top));
        for (unsigned j = 1; j <= l; ++j) den *= factorial(a[j]);
        c = nfact / den;
      }
      RationalFunction mono(1);
      for (unsigned j = 0; j <= l; ++j)
        if (a[j]) mono *= deltas[j].pow(a[j]);
      out.terms.push_back({a, c, mono});
      out.coefficient_total += c;
      if (sgn(c) != 0) inner += RationalFunction(Rational(c)) * mono;
      return;
    }
    for (unsigned ak = 0; ak * k <= weight_left; ++ak) {
      a[k] = ak;
      rec(k - 1, weight_left - ak * k, count + ak);
    }
    a[k] = 0;
  };
  rec(l, l, 0);
  if (f.is_zero()) {
    out.prefactor = RationalFunction(n >= l ? (n == l ? 1 : 0) : 0);
    out.sum = divided_derivative(f.pow(n), l);
    return out;
  }
  out.prefactor = f.pow(static_cast<long>(n) - static_cast<long>(l));
  out.sum = out.prefactor * inner;
  return out;
}

RationalFunction generalized_wronskian(std::span<const RationalFunction> Fs, std::span<const unsigned> rho) {
  if (Fs.empty()) throw ContractError("wronskian of an empty list");
  if (rho.size() != Fs.size()) throw ContractError("generalized_wronskian: |rho| != number of functions");
  const std::size_t k = Fs.size();
  Matrix<RationalFunction> M(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) M(i, j) = divided_derivative(Fs[i], rho[j]);
  return determinant(M);
}

RationalFunction wronskian(std::span<const RationalFunction> Fs) {
  std::vector<unsigned> rho(Fs.size());
  for (std::size_t j = 0; j < rho.size(); ++j) rho[j] = static_cast<unsigned>(j);
  return generalized_wronskian(Fs, rho);
}

std::vector<RationalFunction> riemann_roch_basis(unsigned N, const Place& Q) {
  auto q0 = Q.rational_point();
  if (!q0) throw ContractError("riemann_roch_basis: only finite places of degree 1 are supported");
  RationalFunction g = RationalFunction(1) / (RationalFunction::t() - RationalFunction(*q0));
  std::vector<RationalFunction> out{RationalFunction(1)};
  for (unsigned k = 1; k <= N; ++k) out.push_back(out.back() * g);
  return out;
}

GoodBasis good_basis(const Place& Q) {
  auto q0 = Q.rational_point();
  if (!q0) throw ContractError("good_basis: only finite places of degree 1 are supported");
  GoodBasis b;
  b.delta = 1;
  b.g = RationalFunction(1) / (RationalFunction::t() - RationalFunction(*q0));
  b.g_j = {RationalFunction(1)};
  b.pole_orders = {0};
  return b;
}

std::vector<NFElem> taylor_at(const RationalFunction& f, const NFElem& P, unsigned L) {
  auto num = f.num().taylor_coefficients<NFElem>(P);
  auto den = f.den().taylor_coefficients<NFElem>(P);
  if (den.empty() || thue::is_zero(den[0]))
    throw ContractError("jet at a pole of " + f.to_string() + " (place " +
                        thue::to_string(minimal_polynomial(P), "t") + ")");
  std::vector<NFElem> out(L + 1, NFElem(0));
  NFElem inv = den[0].inverse();
  for (unsigned l = 0; l <= L; ++l) {
    NFElem s = l < num.size() ? num[l] : NFElem(0);
    for (unsigned j = 1; j <= l && j < den.size(); ++j) s -= den[j] * out[l - j];
    out[l] = s * inv;
  }
  return out;
}

Jet jet_at(const RationalFunction& f, const AlgebraicNumber& P, unsigned L) {
  return Jet{P, taylor_at(f, P.value, L)};
}

bool SupportSet::contains(const Place& v) const {
  if (v == q) return true;
  for (const auto& p : s0)
    if (p == v) return true;
  return false;
}

Rational default_base_point(std::span<const RationalFunction> fs) {
  for (long q = 0;; ++q) {
    bool ok = true;
    for (const auto& f : fs) {
      if (f.is_zero()) continue;
      if (f.den()(Rational(q)) == 0 || f.num()(Rational(q)) == 0) {
        ok = false;
        break;
      }
    }
    if (ok) return Rational(q);
  }
}

SupportSet support_set(std::span<const RationalFunction> fs, std::optional<Rational> q0) {
  SupportSet s;
  std::set<Place> places;
  for (const auto& f : fs) {
    if (f.is_zero()) continue;
    for (const auto& [v, o] : divisor(f)) places.insert(v);
  }
  places.insert(Place::infinity());
  s.s0.assign(places.begin(), places.end());
  Rational q = q0 ? *q0 : default_base_point(fs);
  s.q = Place::at(q);
  for (const auto& v : s.s0)
    if (v == s.q) throw ContractError("base point t=" + thue::to_string(q) + " lies in S0");
  return s;
}

Matrix<Rational> coefficient_matrix(std::span<const RationalFunction> polys) {
  int deg = 0;
  for (const auto& p : polys) {
    if (p.den().degree() != 0) throw ContractError("coefficient_matrix: input is not a polynomial");
    deg = std::max(deg, p.num().degree());
  }
  Matrix<Rational> M(polys.size(), deg + 1);
  for (std::size_t i = 0; i < polys.size(); ++i)
    for (int j = 0; j <= deg; ++j) M(i, j) = polys[i].num().coeff(j);
  return M;
}

}  // namespace thue::ff
