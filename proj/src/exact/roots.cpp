#include "thue/exact/roots.hpp"

#include <algorithm>
#include <cmath>

namespace thue {

namespace {

struct GQ {
  Rational re, im;
};

GQ operator+(const GQ& a, const GQ& b) { return {a.re + b.re, a.im + b.im}; }
GQ operator-(const GQ& a, const GQ& b) { return {a.re - b.re, a.im - b.im}; }
GQ operator*(const GQ& a, const GQ& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
Rational norm2(const GQ& a) { return a.re * a.re + a.im * a.im; }
GQ operator/(const GQ& a, const GQ& b) {
  Rational n = norm2(b);
  return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}

GQ eval(const QPoly& p, const GQ& z) {
  GQ acc{0, 0};
  const auto& c = p.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) {
    acc = acc * z;
    acc.re += c[i];
  }
  return acc;
}

Rational dyadic(const Rational& x, unsigned long prec) {
  Integer scale = 1;
  scale <<= prec;
  return Rational(round_of(x * scale), scale);
}

Rational from_ld(long double v) {
  // Exact conversion via frexp mantissa.
  if (v == 0) return 0;
  int e = 0;
  long double m = std::frexp(v, &e);
  long double scaled = std::ldexp(m, 64);
  Integer mant;
  {
    long double a = std::fabs(scaled);
    Integer hi = static_cast<unsigned long>(a / 4294967296.0L);
    Integer lo = static_cast<unsigned long>(a - static_cast<long double>(hi.get_ui()) * 4294967296.0L);
    mant = hi * Integer(4294967296UL) + lo;
    if (scaled < 0) mant = -mant;
  }
  Rational r(mant);
  int shift = e - 64;
  Integer p = 1;
  if (shift >= 0) {
    p <<= shift;
    r *= p;
  } else {
    p <<= -shift;
    r /= p;
  }
  return r;
}

// Rational upper bound of sqrt(x), x >= 0, with relative slack about 2^-bits.
Rational sqrt_upper(const Rational& x, unsigned long bits) {
  if (sgn(x) == 0) return 0;
  Integer scale = 1;
  scale <<= 2 * bits;
  Integer v = ceil_of(x * scale);
  Integer s;
  mpz_sqrt(s.get_mpz_t(), v.get_mpz_t());
  s += 1;
  Integer d = 1;
  d <<= bits;
  return Rational(s, d);
}

using CLD = std::complex<long double>;

std::vector<CLD> aberth_ld(const QPoly& p) {
  const int d = p.degree();
  std::vector<long double> c(d + 1);
  for (int i = 0; i <= d; ++i) c[i] = p.coeffs()[i].get_d();
  std::vector<long double> dc(d);
  for (int i = 1; i <= d; ++i) dc[i - 1] = c[i] * i;
  long double r = 0;
  for (int i = 0; i < d; ++i) r = std::max(r, std::pow(std::fabs(c[i] / c[d]), 1.0L / (d - i)));
  if (r == 0) r = 1;
  std::vector<CLD> z(d);
  const long double pi = 3.14159265358979323846L;
  for (int i = 0; i < d; ++i) z[i] = std::polar(r, 2 * pi * i / d + 0.4L);
  auto ev = [&](const std::vector<long double>& cc, CLD x) {
    CLD acc = 0;
    for (std::size_t i = cc.size(); i-- > 0;) acc = acc * x + cc[i];
    return acc;
  };
  for (int it = 0; it < 2000; ++it) {
    long double change = 0;
    for (int i = 0; i < d; ++i) {
      CLD pv = ev(c, z[i]), dv = ev(dc, z[i]);
      if (pv == CLD(0)) continue;
      CLD w = pv / dv;
      CLD s = 0;
      for (int j = 0; j < d; ++j)
        if (j != i) s += 1.0L / (z[i] - z[j]);
      CLD step = w / (1.0L - w * s);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) continue;
      z[i] -= step;
      change = std::max(change, std::abs(step) / std::max(1.0L, std::abs(z[i])));
    }
    if (change < 1e-17L) break;
  }
  return z;
}

void aberth_exact(const QPoly& p, const QPoly& dp, std::vector<GQ>& z, unsigned long prec, int iters) {
  const std::size_t d = z.size();
  for (int it = 0; it < iters; ++it) {
    for (std::size_t i = 0; i < d; ++i) {
      GQ pv = eval(p, z[i]);
      if (sgn(pv.re) == 0 && sgn(pv.im) == 0) continue;
      GQ dv = eval(dp, z[i]);
      if (sgn(dv.re) == 0 && sgn(dv.im) == 0) continue;
      GQ w = pv / dv;
      GQ s{0, 0};
      bool clash = false;
      for (std::size_t j = 0; j < d; ++j) {
        if (j == i) continue;
        GQ diff = z[i] - z[j];
        if (sgn(diff.re) == 0 && sgn(diff.im) == 0) {
          clash = true;
          break;
        }
        s = s + GQ{1, 0} / diff;
      }
      GQ step = clash ? w : w / (GQ{1, 0} - w * s);
      z[i] = {dyadic(z[i].re - step.re, prec), dyadic(z[i].im - step.im, prec)};
    }
  }
}

struct Disc {
  GQ c;
  Rational r;  // rational upper bound of the radius
};

bool certify(const QPoly& p, const std::vector<GQ>& z, unsigned long prec, std::vector<Disc>& out) {
  const std::size_t d = z.size();
  out.assign(d, Disc{});
  const Rational lc2 = p.lead() * p.lead();
  for (std::size_t i = 0; i < d; ++i) {
    Rational den = lc2;
    for (std::size_t j = 0; j < d; ++j) {
      if (j == i) continue;
      Rational n2 = norm2(z[i] - z[j]);
      if (sgn(n2) == 0) return false;
      den *= n2;
    }
    Rational w2 = norm2(eval(p, z[i])) / den;
    out[i] = Disc{z[i], sqrt_upper(w2 * Rational(d * d), prec + 8)};
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      Rational s = out[i].r + out[j].r;
      if (!(norm2(z[i] - z[j]) > s * s)) return false;
    }
  return true;
}

bool box_less(const RootBox& a, const RootBox& b) {
  Rational ar = a.re_mid(), br = b.re_mid();
  if (ar != br) return ar < br;
  return a.im_mid() < b.im_mid();
}

}  // namespace

Rational RootBox::width() const { return std::max(re_hi - re_lo, im_hi - im_lo); }

bool RootBox::intersects(const RootBox& o) const {
  return !(re_hi < o.re_lo || o.re_hi < re_lo || im_hi < o.im_lo || o.im_hi < im_lo);
}

int sign_at(const QPoly& p, const Rational& x) { return sgn(p(x)); }

std::vector<RootBox> isolate_roots(const QPoly& p_in, const Rational& width) {
  if (p_in.degree() < 1) throw ContractError("isolate_roots: polynomial of degree < 1");
  if (sgn(width) <= 0) throw ContractError("isolate_roots: width must be positive");
  if (!is_squarefree(p_in)) throw ContractError("isolate_roots: polynomial is not squarefree");
  const QPoly p = primitive_part(p_in);
  const int d = p.degree();
  if (d == 1) {
    Rational r = -p.coeffs()[0] / p.coeffs()[1];
    return {RootBox{r, r, 0, 0, true}};
  }
  const QPoly dp = p.derivative();
  auto approx = aberth_ld(p);
  unsigned long prec = 60;
  std::vector<GQ> z(d);
  for (int i = 0; i < d; ++i) z[i] = {dyadic(from_ld(approx[i].real()), prec), dyadic(from_ld(approx[i].imag()), prec)};
  std::vector<Disc> discs;
  for (int round = 0; round < 40; ++round) {
    // Snap near-real approximations onto the axis and make complex ones come
    // in exact conjugate pairs, so real roots get real boxes.
    std::vector<GQ> c = z;
    Rational tiny(1);
    {
      Integer s = 1;
      s <<= prec / 2;
      tiny /= s;
    }
    std::vector<bool> used(d, false);
    for (int i = 0; i < d; ++i) {
      Rational scale = std::max(Rational(1), Rational(abs(c[i].re) + abs(c[i].im)));
      if (abs(c[i].im) < tiny * scale) {
        c[i].im = 0;
        used[i] = true;
      }
    }
    for (int i = 0; i < d; ++i) {
      if (used[i] || sgn(c[i].im) <= 0) continue;
      int best = -1;
      Rational bd;
      for (int j = 0; j < d; ++j) {
        if (used[j] || j == i || sgn(c[j].im) >= 0) continue;
        Rational dist = norm2(GQ{c[j].re - c[i].re, c[j].im + c[i].im});
        if (best < 0 || dist < bd) {
          best = j;
          bd = dist;
        }
      }
      if (best >= 0) {
        c[best] = {c[i].re, -c[i].im};
        used[best] = used[i] = true;
      }
    }
    if (certify(p, c, prec, discs)) {
      bool narrow = true;
      for (const auto& disc : discs)
        if (disc.r * 2 > width) narrow = false;
      if (narrow) {
        std::vector<RootBox> out;
        for (const auto& disc : discs) {
          RootBox b;
          b.re_lo = disc.c.re - disc.r;
          b.re_hi = disc.c.re + disc.r;
          if (sgn(disc.c.im) == 0) {
            b.im_lo = b.im_hi = 0;
            b.real = true;
          } else {
            b.im_lo = disc.c.im - disc.r;
            b.im_hi = disc.c.im + disc.r;
          }
          out.push_back(b);
        }
        std::sort(out.begin(), out.end(), box_less);
        return out;
      }
    }
    prec *= 2;
    aberth_exact(p, dp, z, prec, 3);
  }
  throw InternalError("isolate_roots: precision budget exhausted");
}

std::vector<RootBox> refine_roots(const QPoly& p, const std::vector<RootBox>& boxes, const Rational& width) {
  Rational w = width;
  for (int attempt = 0; attempt < 8; ++attempt, w /= 4) {
    auto fresh = isolate_roots(p, w);
    if (fresh.size() != boxes.size()) throw ContractError("refine_roots: box count does not match polynomial");
    std::vector<RootBox> out(boxes.size());
    std::vector<bool> hit(boxes.size(), false);
    bool ok = true;
    for (const auto& nb : fresh) {
      int owner = -1;
      for (std::size_t i = 0; i < boxes.size(); ++i)
        if (nb.intersects(boxes[i])) {
          if (owner >= 0) ok = false;
          owner = static_cast<int>(i);
        }
      if (owner < 0 || hit[owner]) ok = false;
      if (!ok) break;
      hit[owner] = true;
      const RootBox& ob = boxes[owner];
      RootBox r;
      r.re_lo = std::max(nb.re_lo, ob.re_lo);
      r.re_hi = std::min(nb.re_hi, ob.re_hi);
      r.im_lo = std::max(nb.im_lo, ob.im_lo);
      r.im_hi = std::min(nb.im_hi, ob.im_hi);
      r.real = nb.real || ob.real;
      out[owner] = r;
    }
    if (ok) return out;
  }
  throw InternalError("refine_roots: could not match refined boxes");
}

std::pair<double, double> modulus_bounds(const RootBox& b) {
  auto min_abs = [](const Rational& lo, const Rational& hi) -> Rational {
    if (sgn(lo) <= 0 && sgn(hi) >= 0) return 0;
    return std::min(Rational(abs(lo)), Rational(abs(hi)));
  };
  auto max_abs = [](const Rational& lo, const Rational& hi) -> Rational { return std::max(Rational(abs(lo)), Rational(abs(hi))); };
  Rational mr = min_abs(b.re_lo, b.re_hi), mi = min_abs(b.im_lo, b.im_hi);
  Rational xr = max_abs(b.re_lo, b.re_hi), xi = max_abs(b.im_lo, b.im_hi);
  double lo2 = Rational(mr * mr + mi * mi).get_d(), hi2 = Rational(xr * xr + xi * xi).get_d();
  double lo = std::sqrt(lo2) * (1 - 1e-15), hi = std::sqrt(hi2) * (1 + 1e-15);
  return {std::max(0.0, std::nextafter(lo, 0.0)), std::nextafter(hi, INFINITY)};
}

}  // namespace thue
