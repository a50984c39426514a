#include "thue/exact/factor.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "thue/exact/roots.hpp"

namespace thue {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using ModPoly = std::vector<u64>;

u64 mulm(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 powm(u64 a, u64 e, u64 p) {
  u64 r = 1;
  while (e) {
    if (e & 1) r = mulm(r, a, p);
    a = mulm(a, a, p);
    e >>= 1;
  }
  return r;
}

void mtrim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

ModPoly mmod(ModPoly a, const ModPoly& f, u64 p) {
  mtrim(a);
  const std::size_t n = f.size();
  u64 inv = powm(f.back(), p - 2, p);
  while (a.size() >= n) {
    u64 c = mulm(a.back(), inv, p);
    std::size_t off = a.size() - n;
    for (std::size_t i = 0; i < n; ++i) a[off + i] = (a[off + i] + p - mulm(c, f[i], p)) % p;
    mtrim(a);
  }
  return a;
}

ModPoly mmul(const ModPoly& a, const ModPoly& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  ModPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulm(a[i], b[j], p)) % p;
  mtrim(r);
  return r;
}

ModPoly mdiv(ModPoly a, const ModPoly& f, u64 p) {
  mtrim(a);
  if (a.size() < f.size()) return {};
  ModPoly q(a.size() - f.size() + 1, 0);
  u64 inv = powm(f.back(), p - 2, p);
  while (a.size() >= f.size()) {
    u64 c = mulm(a.back(), inv, p);
    std::size_t off = a.size() - f.size();
    q[off] = c;
    for (std::size_t i = 0; i < f.size(); ++i) a[off + i] = (a[off + i] + p - mulm(c, f[i], p)) % p;
    mtrim(a);
  }
  mtrim(q);
  return q;
}

ModPoly mgcd(ModPoly a, ModPoly b, u64 p) {
  mtrim(a);
  mtrim(b);
  while (!b.empty()) {
    ModPoly r = mmod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

ModPoly mpow_poly(ModPoly g, u64 e, const ModPoly& f, u64 p) {
  ModPoly r{1};
  g = mmod(g, f, p);
  while (e) {
    if (e & 1) r = mmod(mmul(r, g, p), f, p);
    g = mmod(mmul(g, g, p), f, p);
    e >>= 1;
  }
  return r;
}

bool reduce_mod(const QPoly& f, u64 p, ModPoly& out) {
  out.clear();
  for (const auto& c : f.coeffs()) {
    if (c.get_den() != 1) return false;
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), c.get_num_mpz_t(), p);
    out.push_back(r.get_ui());
  }
  mtrim(out);
  return true;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Real interval polynomial arithmetic used for coefficient enclosures.
struct RI {
  Rational lo, hi;
};
RI operator+(const RI& a, const RI& b) { return {a.lo + b.lo, a.hi + b.hi}; }
RI operator*(const RI& a, const RI& b) {
  Rational c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
}
using IPoly = std::vector<RI>;
IPoly imul(const IPoly& a, const IPoly& b) {
  IPoly r(a.size() + b.size() - 1, RI{0, 0});
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
  return r;
}

struct Group {
  std::vector<std::size_t> roots;
  IPoly factor;  // monic real interval factor for the group
};

std::vector<Group> make_groups(const std::vector<RootBox>& boxes) {
  std::vector<Group> groups;
  std::vector<bool> used(boxes.size(), false);
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    if (used[i]) continue;
    const RootBox& b = boxes[i];
    if (b.real) {
      used[i] = true;
      groups.push_back({{i}, {RI{-b.re_hi, -b.re_lo}, RI{1, 1}}});
      continue;
    }
    std::size_t best = boxes.size();
    for (std::size_t j = 0; j < boxes.size(); ++j) {
      if (j == i || used[j] || boxes[j].real) continue;
      if (boxes[j].re_mid() == b.re_mid() && boxes[j].im_mid() == -b.im_mid()) {
        best = j;
        break;
      }
    }
    if (best == boxes.size()) throw InternalError("factor: unpaired complex root box");
    used[i] = used[best] = true;
    RI re{b.re_lo, b.re_hi};
    Rational ia = abs(b.im_lo), ib = abs(b.im_hi);
    RI im{std::min(ia, ib), std::max(ia, ib)};
    RI re2 = re * re;
    if (sgn(re.lo) < 0 && sgn(re.hi) > 0) re2.lo = 0;
    RI n2 = re2 + im * im;
    groups.push_back({{i, best}, {n2, RI{-2 * re.hi, -2 * re.lo}, RI{1, 1}}});
  }
  return groups;
}

int bits_estimate(const QPoly& p, const std::vector<RootBox>& boxes) {
  double b = std::log2(std::fabs(p.lead().get_d())) + p.degree() + 40;
  for (const auto& bx : boxes) b += std::log2(1.0 + modulus_bounds(bx).second);
  return static_cast<int>(std::ceil(b));
}

// Splits a squarefree primitive polynomial. Returns false if the work cap was hit.
bool split_squarefree(const QPoly& f, std::vector<QPoly>& out, std::vector<bool>& proven) {
  if (f.degree() <= 1) {
    out.push_back(f);
    proven.push_back(true);
    return true;
  }
  std::set<int> adm = admissible_factor_degrees(f);
  bool any = false;
  for (int k : adm)
    if (k >= 1 && 2 * k <= f.degree()) any = true;
  if (!any) {
    out.push_back(f);
    proven.push_back(true);
    return true;
  }
  Integer wscale = 1;
  auto boxes = isolate_roots(f, Rational(1, 1 << 20));
  int bits = bits_estimate(f, boxes);
  wscale <<= bits;
  boxes = refine_roots(f, boxes, Rational(1, wscale));
  auto groups = make_groups(boxes);
  QPoly g = f;
  std::vector<bool> alive(groups.size(), true);
  std::size_t work = 0;
  const std::size_t work_cap = 400000;

  for (int k = 1; 2 * k <= g.degree(); ++k) {
    if (!adm.count(k)) continue;
    bool found = true;
    while (found && 2 * k <= g.degree()) {
      found = false;
      std::vector<std::size_t> live;
      for (std::size_t i = 0; i < groups.size(); ++i)
        if (alive[i]) live.push_back(i);
      std::vector<std::size_t> pick;
      bool capped = false;
      std::function<bool(std::size_t, int)> rec = [&](std::size_t start, int remaining) -> bool {
        if (remaining == 0) {
          if (++work > work_cap) {
            capped = true;
            return false;
          }
          for (int attempt = 0; attempt < 6; ++attempt) {
            IPoly prod{RI{g.lead(), g.lead()}};
            for (auto gi : pick) prod = imul(prod, groups[gi].factor);
            std::vector<Integer> coeffs;
            bool ambiguous = false, impossible = false;
            for (const auto& c : prod) {
              Integer lo = ceil_of(c.lo), hi = floor_of(c.hi);
              if (lo > hi) {
                impossible = true;
                break;
              }
              if (lo != hi) ambiguous = true;
              coeffs.push_back(lo);
            }
            if (impossible) return false;
            if (!ambiguous) {
              std::vector<Rational> qc(coeffs.begin(), coeffs.end());
              QPoly h = primitive_part(QPoly(qc));
              if (h.degree() == k && h.divides(g)) {
                out.push_back(h);
                proven.push_back(true);
                g = primitive_part(g / h);
                for (auto gi : pick) alive[gi] = false;
                return true;
              }
              return false;
            }
            // Enclosure too loose: tighten the live boxes and rebuild groups.
            wscale <<= 16;
            boxes = refine_roots(f, boxes, Rational(1, wscale));
            auto fresh = make_groups(boxes);
            for (std::size_t i = 0; i < groups.size(); ++i)
              for (const auto& fg : fresh)
                if (fg.roots == groups[i].roots) groups[i].factor = fg.factor;
          }
          throw InternalError("factor: coefficient enclosures failed to tighten");
        }
        for (std::size_t idx = start; idx < live.size(); ++idx) {
          int sz = static_cast<int>(groups[live[idx]].roots.size());
          if (sz > remaining) continue;
          pick.push_back(live[idx]);
          bool hit = rec(idx + 1, remaining - sz);
          pick.pop_back();
          if (hit || capped) return hit;
        }
        return false;
      };
      found = rec(0, k);
      if (capped) {
        out.push_back(g);
        proven.push_back(false);
        return false;
      }
    }
  }
  out.push_back(g);
  proven.push_back(true);
  return true;
}

bool factor_less(const Factor& a, const Factor& b) {
  if (a.poly.degree() != b.poly.degree()) return a.poly.degree() < b.poly.degree();
  const auto& x = a.poly.coeffs();
  const auto& y = b.poly.coeffs();
  for (std::size_t i = x.size(); i-- > 0;)
    if (x[i] != y[i]) return x[i] < y[i];
  return a.multiplicity < b.multiplicity;
}

}  // namespace

bool Factorization::complete() const {
  for (const auto& f : factors)
    if (!f.proven_irreducible) return false;
  return true;
}

std::vector<std::pair<int, int>> ddf_pattern_mod(const QPoly& p, u64 prime) {
  ModPoly f;
  if (!reduce_mod(p, prime, f) || f.size() != p.coeffs().size())
    throw ContractError("ddf_pattern_mod: leading coefficient vanishes mod p");
  // Make monic.
  u64 inv = powm(f.back(), prime - 2, prime);
  for (auto& c : f) c = mulm(c, inv, prime);
  std::vector<std::pair<int, int>> pattern;
  ModPoly h = mmod(ModPoly{0, 1}, f, prime);
  int k = 0;
  while (2 * (k + 1) <= static_cast<int>(f.size()) - 1) {
    ++k;
    h = mpow_poly(h, prime, f, prime);
    ModPoly diff = h;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = (diff[1] + prime - 1) % prime;
    mtrim(diff);
    ModPoly g = mgcd(diff, f, prime);
    int dg = static_cast<int>(g.size()) - 1;
    if (dg > 0) {
      pattern.emplace_back(k, dg / k);
      f = mdiv(f, g, prime);
      h = mmod(h, f, prime);
    }
  }
  int rest = static_cast<int>(f.size()) - 1;
  if (rest > 0) pattern.emplace_back(rest, 1);
  return pattern;
}

std::set<int> admissible_factor_degrees(const QPoly& p, int primes) {
  const int d = p.degree();
  std::set<int> adm;
  for (int i = 0; i <= d; ++i) adm.insert(i);
  int used = 0;
  for (u64 q = 3; used < primes && q < 2000; q += 2) {
    if (!is_prime(q)) continue;
    ModPoly f, df;
    if (!reduce_mod(p, q, f) || f.size() != p.coeffs().size()) continue;
    reduce_mod(p.derivative(), q, df);
    if (df.empty()) continue;
    ModPoly g = mgcd(f, df, q);
    if (g.size() != 1) continue;
    ++used;
    std::vector<bool> sums(d + 1, false);
    sums[0] = true;
    for (auto [deg, count] : ddf_pattern_mod(p, q))
      for (int c = 0; c < count; ++c)
        for (int s = d; s >= deg; --s)
          if (sums[s - deg]) sums[s] = true;
    std::set<int> next;
    for (int s : adm)
      if (sums[s]) next.insert(s);
    adm = std::move(next);
    if (adm.size() == 2) break;
  }
  return adm;
}

Factorization factor(const QPoly& p) {
  if (p.is_zero()) throw ContractError("factor: zero polynomial");
  Factorization out;
  if (p.degree() == 0) {
    out.unit = p.lead();
    return out;
  }
  Rational unit = p.lead();
  for (auto& [part, mult] : squarefree_decomposition(p)) {
    std::vector<QPoly> pieces;
    std::vector<bool> proven;
    split_squarefree(primitive_part(part), pieces, proven);
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      if (pieces[i].degree() < 1) continue;
      QPoly f = primitive_part(pieces[i]);
      out.factors.push_back(Factor{f, mult, proven[i]});
      Rational l = f.lead();
      for (int e = 0; e < mult; ++e) unit /= l;
    }
  }
  out.unit = unit;
  std::sort(out.factors.begin(), out.factors.end(), factor_less);
  return out;
}

bool is_irreducible(const QPoly& p, int degree_cap) {
  if (p.degree() < 1) return false;
  if (p.degree() > degree_cap) throw ContractError("is_irreducible: degree above cap");
  auto f = factor(p);
  if (!f.complete()) throw InternalError("is_irreducible: factorisation incomplete");
  return f.factors.size() == 1 && f.factors[0].multiplicity == 1;
}

}  // namespace thue
