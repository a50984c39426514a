#include "thue/reduction/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>

namespace thue::reduction {

namespace {

RationalFunction power(const RationalFunction& f, long k) {
  if (k >= 0) return f.pow(static_cast<unsigned>(k));
  return RationalFunction(1) / f.pow(static_cast<unsigned>(-k));
}

RationalFunction power(const RationalFunction& f, const Integer& k) {
  if (!k.fits_slong_p()) throw ContractError("exponent too large: " + k.get_str());
  return power(f, k.get_si());
}

Rational frac(const Rational& x) {
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return x - Rational(fl);
}

Integer floor_of(const Rational& x) {
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return fl;
}

}  // namespace

void SubgroupPresentation::validate() const {
  if (generators.empty()) throw ContractError("presentation: need at least one generator");
  for (const auto& g : generators) {
    if (g.size() != r) throw ContractError("presentation: generator of length " + std::to_string(g.size()) + " in rank " + std::to_string(r));
    for (const auto& c : g)
      if (c.is_zero()) throw ContractError("presentation: zero coordinate function");
  }
  for (const auto& w : torsion)
    if (w.size() != r) throw ContractError("presentation: torsion vector has the wrong length");
}

std::vector<RationalFunction> character_image(const SubgroupPresentation& gamma, std::span<const long> e) {
  if (e.size() != gamma.r) throw ContractError("character_image: character has the wrong length");
  std::vector<RationalFunction> h;
  for (const auto& g : gamma.generators) {
    RationalFunction acc(1);
    for (std::size_t i = 0; i < gamma.r; ++i)
      if (e[i]) acc *= power(g[i], e[i]);
    h.push_back(acc);
  }
  return h;
}

std::string ConstantFreeVerdict::describe() const {
  std::ostringstream o;
  if (constant_free) {
    o << "constant-free within box " << box << " (" << characters_checked << " characters)";
    return o.str();
  }
  o << "NOT constant-free: character e = (";
  for (std::size_t i = 0; i < witness->e.size(); ++i) o << (i ? "," : "") << witness->e[i];
  o << "), lambda = (";
  for (std::size_t i = 0; i < witness->lambda.size(); ++i) o << (i ? "," : "") << witness->lambda[i].get_str();
  o << "), constant " << to_string(witness->constant);
  return o.str();
}

ConstantFreeVerdict is_constant_free(const SubgroupPresentation& gamma, long box) {
  gamma.validate();
  if (box < 1) throw ContractError("is_constant_free: box must be at least 1");
  const std::size_t r = gamma.r, kappa = gamma.kappa();
  // Divisors of the generator coordinates, so div(h_j) = sum_i e_i div(g_{j,i}).
  std::vector<std::vector<ff::Divisor>> divs(kappa, std::vector<ff::Divisor>(r));
  for (std::size_t j = 0; j < kappa; ++j)
    for (std::size_t i = 0; i < r; ++i) divs[j][i] = ff::divisor(gamma.generators[j][i]);

  ConstantFreeVerdict v;
  v.box = box;
  for (long shell = 1; shell <= box; ++shell) {
    std::vector<long> e(r, -shell);
    while (true) {
      long sup = 0, g = 0;
      for (long x : e) {
        sup = std::max(sup, std::abs(x));
        g = std::gcd(g, std::abs(x));
      }
      if (sup == shell && g == 1) {
        ++v.characters_checked;
        std::vector<ff::Divisor> hd(kappa);
        std::map<ff::Place, std::size_t> rows;
        for (std::size_t j = 0; j < kappa; ++j)
          for (std::size_t i = 0; i < r; ++i)
            for (const auto& [pl, m] : divs[j][i]) {
              hd[j][pl] += e[i] * m;
              rows.emplace(pl, 0);
            }
        std::size_t k = 0;
        for (auto& [pl, idx] : rows) idx = k++;
        Matrix<Rational> M(std::max<std::size_t>(rows.size(), 1), kappa);
        for (std::size_t j = 0; j < kappa; ++j)
          for (const auto& [pl, m] : hd[j]) M(rows[pl], j) = Rational(m);
        auto kern = integer_kernel(M);
        if (!kern.empty()) {
          auto h = character_image(gamma, e);
          for (auto lam : kern) {
            RationalFunction c(1);
            for (std::size_t j = 0; j < kappa; ++j)
              if (sgn(lam[j])) c *= power(h[j], lam[j]);
            if (!c.is_constant()) throw InternalError("is_constant_free: kernel element with nonconstant product");
            Rational cv = c.constant_value();
            if (cv == 1 || cv == -1) continue;
            auto first = std::find_if(lam.begin(), lam.end(), [](const Integer& x) { return sgn(x) != 0; });
            if (sgn(*first) < 0) {
              for (auto& x : lam) x = -x;
              cv = 1 / cv;
            }
            v.constant_free = false;
            v.witness = ConstantFreeWitness{e, lam, cv};
            return v;
          }
        }
      }
      std::size_t i = r;
      while (i > 0 && e[i - 1] == shell) e[--i] = -shell;
      if (i == 0) break;
      ++e[i - 1];
    }
  }
  return v;
}

DirichletResult dirichlet_approx(std::span<const Integer> lambda, long Q) {
  if (lambda.empty()) throw ContractError("dirichlet_approx: empty exponent vector");
  if (Q < 2) throw ContractError("dirichlet_approx: DirichletQ must be at least 2");
  DirichletResult d;
  d.lambda.assign(lambda.begin(), lambda.end());
  d.Q = Q;
  d.A = 0;
  for (const auto& x : lambda) d.A = std::max(d.A, Integer(abs(x)));
  if (sgn(d.A) == 0) throw ContractError("dirichlet_approx: lambda = 0");
  const std::size_t kappa = lambda.size();
  Integer Qk = 1;
  for (std::size_t i = 0; i < kappa; ++i) Qk *= Q;
  const Rational invQ(1, Q);
  for (Integer q = 1; q <= Qk; ++q) {
    std::vector<Integer> p;
    bool ok = true;
    for (const auto& l : lambda) {
      Rational x = Rational(q * l) / Rational(d.A);
      x.canonicalize();
      Integer pj = floor_of(x + Rational(1, 2));
      Rational err = abs(Rational(x - Rational(pj)));
      if (err >= invQ) {
        ok = false;
        break;
      }
      p.push_back(pj);
    }
    if (!ok) continue;
    d.q = q;
    d.p = p;
    d.n = d.A / q;
    for (std::size_t j = 0; j < kappa; ++j) d.rem.push_back(lambda[j] - d.n * p[j]);
    for (std::size_t j = 0; j < kappa; ++j) {
      if (abs(d.p[j]) > 2 * Qk) throw InternalError("dirichlet_approx: |p_j| > 2 Q^kappa");
      if (Rational(abs(d.rem[j])) > Rational(d.n + 1) / Q + Rational(2 * Qk))
        throw InternalError("dirichlet_approx: remainder bound fails");
    }
    return d;
  }
  throw InternalError("dirichlet_approx: no q <= Q^kappa found");
}

std::vector<RationalFunction> element(const SubgroupPresentation& gamma, std::span<const Integer> lambda) {
  gamma.validate();
  if (lambda.size() != gamma.kappa()) throw ContractError("element: exponent vector has the wrong length");
  std::vector<RationalFunction> out(gamma.r, RationalFunction(1));
  for (std::size_t j = 0; j < gamma.kappa(); ++j)
    if (sgn(lambda[j]))
      for (std::size_t i = 0; i < gamma.r; ++i) out[i] *= power(gamma.generators[j][i], lambda[j]);
  return out;
}

std::vector<RationalFunction> Decomposition::alpha_functions() const {
  std::vector<RationalFunction> out;
  for (std::size_t i = 0; i < rho.size(); ++i) out.push_back(theta[i] * rho[i]);
  return out;
}

NFElem root_of_unity(const Rational& angle) {
  Rational a = frac(angle);
  if (sgn(a) == 0) return NFElem(1);
  if (a == Rational(1, 2)) return NFElem(-1);
  const unsigned long m = a.get_den().get_ui();
  const unsigned long k = a.get_num().get_ui();
  const QPoly phi = cyclotomic(static_cast<unsigned>(m));
  const std::complex<double> target = std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m));
  int best = 0;
  double dist = 1e9;
  for (int i = 0; i < phi.degree(); ++i) {
    double dd = std::abs(AlgebraicNumber::root_of(phi, i, true).approx() - target);
    if (dd < dist) {
      dist = dd;
      best = i;
    }
  }
  return AlgebraicNumber::root_of(phi, best, true).value;
}

Vec<NFElem> Decomposition::alpha_at(const AlgebraicNumber& P) const {
  auto fn = alpha_functions();
  Vec<NFElem> out;
  bool signs_only = std::all_of(omega.begin(), omega.end(), [](const Rational& a) {
    Rational f = frac(a);
    return sgn(f) == 0 || f == Rational(1, 2);
  });
  if (!signs_only && !P.is_rational())
    throw ContractError("alpha_at: torsion beyond +-1 needs a rational point");
  if (signs_only) {
    for (std::size_t i = 0; i < fn.size(); ++i) out.push_back(root_of_unity(omega[i]) * fn[i].eval(P.value));
    return out;
  }
  // One cyclotomic field for all coordinates.
  Integer L = 1;
  for (const auto& a : omega) L = lcm(L, Integer(frac(a).get_den()));
  NFElem zeta = root_of_unity(Rational(Integer(1), L));
  for (std::size_t i = 0; i < fn.size(); ++i) {
    Rational k = frac(omega[i]) * Rational(L);
    NFElem z = zeta.pow(static_cast<unsigned>(k.get_num().get_ui()));
    out.push_back(z * NFElem(fn[i].eval(P.value).to_rational()));
  }
  return out;
}

Decomposition decompose(const SubgroupPresentation& gamma, std::span<const Integer> lambda, const TorsionVector& omega,
                        std::span<const RationalFunction> theta, long Q) {
  gamma.validate();
  if (lambda.size() != gamma.kappa()) throw ContractError("decompose: exponent vector has the wrong length");
  if (omega.size() != gamma.r || theta.size() != gamma.r) throw ContractError("decompose: omega and theta need r entries");
  Decomposition dec;
  dec.approx = dirichlet_approx(lambda, Q);
  if (std::all_of(dec.approx.p.begin(), dec.approx.p.end(), [](const Integer& x) { return sgn(x) == 0; }))
    throw ContractError("approximation degenerate, increase DirichletQ");
  dec.f = element(gamma, dec.approx.p);
  dec.rho = element(gamma, dec.approx.rem);
  dec.omega = omega;
  dec.theta.assign(theta.begin(), theta.end());
  for (std::size_t j = 0; j < lambda.size(); ++j)
    if (lambda[j] != dec.approx.n * dec.approx.p[j] + dec.approx.rem[j]) throw InternalError("decompose: round trip fails");
  bool torsion = std::all_of(dec.f.begin(), dec.f.end(), [](const RationalFunction& x) {
    if (!x.is_constant()) return false;
    Rational c = x.constant_value();
    return c == 1 || c == -1;
  });
  if (torsion) throw ContractError("decompose: f is torsion, the generators are not free");
  // gamma_i = omega_i rho_i f_i^n as functions.
  auto g = element(gamma, lambda);
  for (std::size_t i = 0; i < gamma.r; ++i)
    if (g[i] != dec.rho[i] * dec.f[i].pow(static_cast<unsigned>(dec.n())))
      throw InternalError("decompose: gamma != rho f^n");
  return dec;
}

NormalizedInstance normalize_to_first_coordinate(const SubgroupPresentation& gamma,
                                                 std::span<const RationalFunction> elem,
                                                 std::span<const RationalFunction> theta) {
  gamma.validate();
  if (elem.size() != gamma.r || theta.size() != gamma.r) throw ContractError("normalize: element and theta need r entries");
  RationalFunction combo;
  for (std::size_t i = 0; i < gamma.r; ++i) combo += theta[i] * elem[i];
  if (combo.is_zero()) throw ContractError("normalize: theta . gamma vanishes identically");
  for (const auto& x : elem)
    if (x.is_zero()) throw ContractError("normalize: zero coordinate");
  NormalizedInstance out;
  out.gamma.r = gamma.r;
  for (const auto& g : gamma.generators) {
    std::vector<RationalFunction> v;
    for (const auto& c : g) v.push_back(c / g[0]);
    out.gamma.generators.push_back(std::move(v));
  }
  for (const auto& w : gamma.torsion) {
    TorsionVector v;
    for (const auto& a : w) v.push_back(frac(a - w[0]));
    out.gamma.torsion.push_back(std::move(v));
  }
  for (const auto& x : elem) out.element.push_back(x / elem[0]);
  out.theta.assign(theta.begin(), theta.end());
  return out;
}

}  // namespace thue::reduction
