#include "thue/heights/heights.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "thue/exact/roots.hpp"
#include "thue/errors.hpp"

namespace thue {

namespace {

Rational rpow(const Rational& q, unsigned long e) {
  Integer n, d;
  mpz_pow_ui(n.get_mpz_t(), q.get_num_mpz_t(), e);
  mpz_pow_ui(d.get_mpz_t(), q.get_den_mpz_t(), e);
  Rational r(n, d);
  r.canonicalize();
  return r;
}

// Widening for values assembled from a handful of correctly rounded logs.
double slack(double x) { return 1e-13 * (1 + std::abs(x)); }

}  // namespace

double LogValue::approx() const {
  return (log_abs(q.get_num()) - log_abs(q.get_den())) / static_cast<double>(k);
}

LogValue LogValue::operator-() const { return LogValue{1 / q, k}; }

int compare(const LogValue& a, const LogValue& b) {
  Rational x = rpow(a.q, b.k), y = rpow(b.q, a.k);
  return cmp(x, y) < 0 ? -1 : (x == y ? 0 : 1);
}

bool LogValue::abs_at_most_log(const Rational& bound) const {
  if (bound < 1) return false;
  Rational bk = rpow(bound, k);
  return q <= bk && q * bk >= 1;
}

LogValue log_of(const Rational& q, unsigned long k) {
  if (sgn(q) <= 0) throw ContractError("log of a non-positive rational");
  if (k == 0) throw ContractError("LogValue with k = 0");
  return LogValue{q, k};
}

HeightValue HeightValue::of(const LogValue& v) {
  double x = v.approx();
  HeightValue h;
  h.lo = std::max(0.0, x - slack(x));
  h.hi = x + slack(x);
  if (v.q == 1) h.lo = h.hi = 0;
  h.exact = v;
  return h;
}

HeightValue height_rational(const Rational& x) {
  Integer n = abs(x.get_num());
  const Integer& d = x.get_den();
  return HeightValue::of(log_of(Rational(n > d ? n : d)));
}

HeightValue height_of_minpoly(const QPoly& m0, double tol) {
  if (m0.degree() < 1) throw ContractError("height_of_minpoly: constant polynomial");
  QPoly m = primitive_part(m0);
  const int deg = m.degree();
  if (deg == 1) return height_rational(-m.coeff(0) / m.coeff(1));
  tol = std::max(tol, 1e-11);
  const Rational lead = abs(m.lead());
  const double log_lead = log_abs(lead.get_num());
  Rational w(1, 1 << 20);
  auto boxes = isolate_roots(m, w);
  for (int iter = 0; iter < 40; ++iter) {
    double lo = log_lead, hi = log_lead;
    bool all_out = true, all_in = true;
    for (const auto& b : boxes) {
      auto [rlo, rhi] = modulus_bounds(b);
      if (rlo <= 1) all_out = false;
      if (rhi >= 1) all_in = false;
      lo += std::log(std::max(1.0, rlo));
      hi += std::log(std::max(1.0, rhi));
    }
    // Every root strictly outside (inside) the unit circle: M = |m(0)| (|lead|).
    if (all_out) return HeightValue::of(log_of(abs(m.coeff(0)), deg));
    if (all_in) return HeightValue::of(log_of(lead, deg));
    lo = std::nextafter(lo / deg, -INFINITY) - slack(lo / deg);
    hi = std::nextafter(hi / deg, INFINITY) + slack(hi / deg);
    if (hi - lo <= tol) return HeightValue{std::max(0.0, lo), hi, std::nullopt};
    w = w * w;
    boxes = refine_roots(m, boxes, w);
  }
  throw InternalError("height_of_minpoly: refinement did not reach the requested width");
}

HeightValue height_algebraic(const NFElem& a, double tol) {
  if (a.is_rational()) return height_rational(a.to_rational());
  if (is_root_of_unity(a)) return HeightValue::of(log_of(1));
  return height_of_minpoly(minimal_polynomial(a), tol);
}

HeightValue height_algebraic(const AlgebraicNumber& a, double tol) { return height_algebraic(a.value, tol); }

HeightValue projective_height(std::span<const Rational> xs) {
  Integer l = 1, g = 0;
  for (const auto& x : xs) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  Integer mx = 0;
  for (const auto& x : xs) {
    Integer v = abs(x.get_num() * (l / x.get_den()));
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (v > mx) mx = v;
  }
  if (sgn(mx) == 0) throw ContractError("projective height of the zero vector");
  return HeightValue::of(log_of(Rational(mx / g)));
}

HeightValue affine_height(std::span<const Rational> xs) {
  std::vector<Rational> v{Rational(1)};
  v.insert(v.end(), xs.begin(), xs.end());
  return projective_height(v);
}

std::vector<Rational> PlaneModel::coefficients() const {
  std::vector<Rational> v = A.coeffs();
  v.insert(v.end(), B.coeffs().begin(), B.coeffs().end());
  if (A.is_zero()) v.insert(v.begin(), Rational(0));
  return v;
}

PlaneModel plane_model(const ff::RationalFunction& f) {
  auto [n, d] = ff::integral_pair(f);
  return PlaneModel{n, d};
}

HeightValue height_function(const ff::RationalFunction& f) { return projective_height(plane_model(f).coefficients()); }

LogValue height_machine_residual(std::span<const ff::RationalFunction> fs, const Rational& P) {
  if (fs.size() < 2) throw ContractError("height machine needs at least two functions");
  std::vector<Rational> vals;
  bool all_zero = true;
  for (const auto& f : fs) {
    if (sgn(f.den()(P)) == 0) throw ContractError("excluded point: t=" + to_string(P) + " is a pole of " + f.to_string());
    vals.push_back(f(P));
    if (sgn(vals.back()) != 0) all_zero = false;
  }
  if (all_zero) throw ContractError("excluded point: t=" + to_string(P) + " is a common zero");
  long d = ff::joint_divisor(fs).d;
  Rational hv = projective_height(vals).exact->q;
  Rational hp = height_rational(P).exact->q;
  return log_of(hv / rpow(hp, static_cast<unsigned long>(d)));
}

HeightValue eisenstein_monomial_height(const ff::Jet& jet, std::span<const unsigned> a, unsigned L) {
  if (a.size() > jet.values.size()) throw ContractError("exponent vector longer than the jet");
  unsigned long total = 0, weight = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    total += a[k];
    weight += k * a[k];
  }
  if (total > L || weight > L) throw ContractError("exponents violate a_0+...+a_l <= L or a_1+...+l a_l <= L");
  NFElem m(1);
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k]) m *= jet.values[k].pow(a[k]);
  return height_algebraic(m);
}

std::string CalibrationSpec::describe() const {
  std::ostringstream o;
  o << "seed=" << seed << ";samples=" << samples << ";max_degree=" << max_degree << ";coeff_range=" << coeff_range
    << ";height_bound=" << height_bound << ";max_n=" << max_n << ";max_L=" << max_L;
  return o.str();
}

std::string ResidualReport::to_csv() const {
  std::ostringstream o;
  o.precision(12);
  o << "# lemma=" << lemma << " " << sample_spec << "\n";
  o << "sample-id,lhs,rhs,residual,fitted-c\n";
  for (const auto& r : rows) o << r.sample_id << "," << r.lhs << "," << r.rhs << "," << r.residual << "," << r.fitted_c << "\n";
  return o.str();
}

std::vector<Rational> rationals_up_to(long H) {
  std::vector<Rational> out;
  for (long q = 1; q <= H; ++q)
    for (long p = -H; p <= H; ++p)
      if (std::gcd(p, q) == 1) out.emplace_back(p, q);
  for (auto& r : out) r.canonicalize();
  std::stable_sort(out.begin(), out.end(), [](const Rational& a, const Rational& b) {
    auto ha = std::max(Integer(abs(a.get_num())), Integer(a.get_den()));
    auto hb = std::max(Integer(abs(b.get_num())), Integer(b.get_den()));
    if (ha != hb) return ha < hb;
    return a < b;
  });
  return out;
}

const std::vector<std::string>& calibration_lemmas() {
  static const std::vector<std::string> ids{"power", "derivative", "trace", "sum-product",
                                            "coordinate-change", "machine", "eisenstein"};
  return ids;
}

namespace {

ff::RationalFunction random_function(std::mt19937_64& rng, const CalibrationSpec& s) {
  std::uniform_int_distribution<int> deg(0, s.max_degree), co(-s.coeff_range, s.coeff_range);
  auto poly = [&] {
    int d = deg(rng);
    std::vector<Rational> c(d + 1);
    for (auto& x : c) x = co(rng);
    if (c[d] == 0) c[d] = 1;
    return QPoly(c);
  };
  while (true) {
    ff::RationalFunction f(poly(), poly());
    if (!f.is_constant()) return f;
  }
}

double h(const ff::RationalFunction& f) { return height_function(f).mid(); }

void add_row(ResidualReport& r, std::string id, double lhs, double rhs, double c) {
  r.rows.push_back({std::move(id), lhs, rhs, lhs - rhs, c});
  r.fitted_c = std::max(r.fitted_c, c);
  r.max_residual = r.rows.size() == 1 ? lhs - rhs : std::max(r.max_residual, lhs - rhs);
}

void enumerate_exponents(unsigned L, std::vector<unsigned>& a, unsigned k, unsigned total, unsigned weight,
                         const std::function<void(const std::vector<unsigned>&)>& visit) {
  if (k == a.size()) {
    visit(a);
    return;
  }
  for (unsigned e = 0; total + e <= L && weight + k * e <= L; ++e) {
    a[k] = e;
    enumerate_exponents(L, a, k + 1, total + e, weight + k * e, visit);
  }
  a[k] = 0;
}

}  // namespace

ResidualReport calibrate(const std::string& lemma, const CalibrationSpec& spec) {
  using ff::RationalFunction;
  ResidualReport rep;
  rep.lemma = lemma;
  rep.sample_spec = spec.describe();
  std::mt19937_64 rng(spec.seed);
  const RationalFunction t = RationalFunction::t();

  if (lemma == "power") {
    for (int s = 0; s < spec.samples; ++s) {
      auto f = random_function(rng, spec);
      double hf = h(f), df = f.degree();
      for (unsigned n = 1; n <= spec.max_n; ++n) {
        double lhs = h(f.pow(n)), rhs = n * hf;
        add_row(rep, "f" + std::to_string(s) + ":n" + std::to_string(n), lhs, rhs, std::max(0.0, (lhs - rhs) / (n * df)));
      }
    }
  } else if (lemma == "derivative") {
    for (int s = 0; s < spec.samples; ++s) {
      auto f = random_function(rng, spec);
      auto fp = f.derivative();
      double lhs = h(fp), rhs = h(f) + f.degree();
      double c = std::max(lhs / rhs, static_cast<double>(fp.degree()) / f.degree());
      add_row(rep, "f" + std::to_string(s), lhs, rhs, c);
    }
  } else if (lemma == "trace") {
    // F = Q(t): the trace to Q(t) is the identity and log d(t) = 0.
    for (int s = 0; s < spec.samples; ++s) {
      auto f = random_function(rng, spec);
      double hf = h(f);
      add_row(rep, "f" + std::to_string(s), hf, hf, 0);
    }
  } else if (lemma == "sum-product") {
    for (int s = 0; s < spec.samples; ++s) {
      auto f = random_function(rng, spec), g = random_function(rng, spec);
      double lhs = std::max(h(f + g), h(f * g));
      double rhs = h(f) + h(g) + f.degree() + g.degree();
      add_row(rep, "f" + std::to_string(s), lhs, rhs, lhs / rhs);
    }
  } else if (lemma == "coordinate-change") {
    // s = (2t+1)/(t-3); the height with respect to s is h(f o s^{-1}).
    const RationalFunction s_inv = (RationalFunction(3) * t + RationalFunction(1)) / (t - RationalFunction(2));
    for (int s = 0; s < spec.samples; ++s) {
      auto f = random_function(rng, spec);
      double lhs = h(f.compose(s_inv)), rhs = h(f) + f.degree();
      add_row(rep, "f" + std::to_string(s), lhs, rhs, lhs / rhs);
    }
  } else if (lemma == "machine") {
    const std::vector<std::vector<RationalFunction>> families{
        {t, RationalFunction(1) - t},
        {t, RationalFunction(1) - t, RationalFunction(1), RationalFunction(1) + t},
        {t * t, RationalFunction(1) - t, RationalFunction(1)}};
    for (std::size_t fi = 0; fi < families.size(); ++fi) {
      long d = ff::joint_divisor(families[fi]).d;
      for (const auto& P : rationals_up_to(spec.height_bound)) {
        LogValue res;
        try {
          res = height_machine_residual(families[fi], P);
        } catch (const ContractError&) {
          continue;
        }
        double hp = height_rational(P).mid(), r = res.approx();
        double rhs = d * hp;
        add_row(rep, "F" + std::to_string(fi) + ":P=" + to_string(P), rhs + r, rhs, std::abs(r) / (1 + std::sqrt(hp)));
      }
    }
  } else if (lemma == "eisenstein") {
    const std::vector<RationalFunction> fs{t * t, RationalFunction(1) / (RationalFunction(1) - t),
                                           (t + RationalFunction(1)) / (t - RationalFunction(2))};
    for (std::size_t fi = 0; fi < fs.size(); ++fi) {
      for (const auto& P : rationals_up_to(spec.height_bound)) {
        if (sgn(fs[fi].den()(P)) == 0) continue;
        auto jet = ff::jet_at(fs[fi], AlgebraicNumber::rational(P), spec.max_L);
        std::vector<Rational> vals;
        for (const auto& v : jet.values) vals.push_back(v.to_rational());
        double hp = height_rational(P).mid();
        for (unsigned L = 1; L <= spec.max_L; ++L) {
          double best = 0;
          std::vector<unsigned> a(L + 1, 0);
          enumerate_exponents(L, a, 0, 0, 0, [&](const std::vector<unsigned>& e) {
            Rational m = 1;
            for (std::size_t k = 0; k < e.size(); ++k)
              if (e[k]) m *= rpow(vals[k], e[k]);
            best = std::max(best, height_rational(m).mid());
          });
          double rhs = L * (hp + 1);
          add_row(rep, "f" + std::to_string(fi) + ":P=" + to_string(P) + ":L=" + std::to_string(L), best, rhs,
                  best / rhs);
        }
      }
    }
  } else {
    throw ContractError("unknown lemma id '" + lemma + "'");
  }
  return rep;
}

}  // namespace thue
