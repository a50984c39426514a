#include "thue/exact/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace thue {

namespace {

void sign_normalise(Vec<Integer>& v) {
  for (const auto& x : v) {
    if (sgn(x) == 0) continue;
    if (sgn(x) < 0)
      for (auto& y : v) y = -y;
    return;
  }
}

// Kernel of a single nonzero integer row, as integer column vectors.
std::vector<Vec<Integer>> row_kernel(const Vec<Integer>& u) {
  const std::size_t m = u.size();
  std::vector<Vec<Integer>> cols(m, Vec<Integer>(m, 0));
  for (std::size_t i = 0; i < m; ++i) cols[i][i] = 1;
  Vec<Integer> a = u;
  std::size_t pos = m;
  for (std::size_t i = 0; i < m; ++i)
    if (sgn(a[i]) != 0) {
      pos = i;
      break;
    }
  std::vector<Vec<Integer>> out;
  if (pos == m) return cols;
  for (std::size_t j = 0; j < m; ++j) {
    if (j == pos || sgn(a[j]) == 0) continue;
    Integer g, x, y;
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a[pos].get_mpz_t(), a[j].get_mpz_t());
    Integer p = a[j] / g, q = a[pos] / g;
    Vec<Integer> cp(m), cj(m);
    for (std::size_t r = 0; r < m; ++r) {
      cp[r] = x * cols[pos][r] + y * cols[j][r];
      cj[r] = -p * cols[pos][r] + q * cols[j][r];
    }
    cols[pos] = std::move(cp);
    cols[j] = std::move(cj);
    a[pos] = g;
    a[j] = 0;
  }
  for (std::size_t j = 0; j < m; ++j)
    if (j != pos) out.push_back(cols[j]);
  return out;
}

}  // namespace

Integer sup_norm(const Vec<Integer>& v) {
  Integer s = 0;
  for (const auto& x : v)
    if (abs(x) > s) s = abs(x);
  return s;
}

Vec<Integer> primitive_integer_vector(const Vec<Rational>& v) {
  Integer l = 1, g = 0;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  Vec<Integer> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rational t = v[i] * l;
    r[i] = t.get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), r[i].get_mpz_t());
  }
  if (sgn(g) == 0) return r;
  for (auto& x : r) x /= g;
  sign_normalise(r);
  return r;
}

std::vector<Vec<Integer>> hermite_normal_form(std::vector<Vec<Integer>> rows) {
  if (rows.empty()) return rows;
  const std::size_t n = rows[0].size();
  std::size_t r = 0;
  std::vector<std::size_t> pivcols;
  for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
    // Euclid down the column until a single nonzero entry remains at row r.
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t i = r; i < rows.size(); ++i)
        if (sgn(rows[i][c]) != 0 && (best == rows.size() || abs(rows[i][c]) < abs(rows[best][c]))) best = i;
      if (best == rows.size()) break;
      std::swap(rows[r], rows[best]);
      bool done = true;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (sgn(rows[i][c]) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
        for (std::size_t j = c; j < n; ++j) rows[i][j] -= q * rows[r][j];
        if (sgn(rows[i][c]) != 0) done = false;
      }
      if (done) break;
    }
    if (sgn(rows[r][c]) == 0) continue;
    if (sgn(rows[r][c]) < 0)
      for (auto& x : rows[r]) x = -x;
    for (std::size_t i = 0; i < r; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
      if (sgn(q) != 0)
        for (std::size_t j = c; j < n; ++j) rows[i][j] -= q * rows[r][j];
    }
    pivcols.push_back(c);
    ++r;
  }
  rows.resize(r);
  return rows;
}

std::vector<Vec<Integer>> integer_kernel(const Matrix<Rational>& m) {
  Matrix<Rational> e = m;
  auto pivots = rref(e);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free.push_back(c);
  const std::size_t k = free.size();
  if (k == 0) return {};

  // Pivot coordinate p of the kernel vector with free coordinates z is
  // -sum_j e(i_p, f_j) z_j.
  Integer D = 1;
  for (std::size_t i = 0; i < pivots.size(); ++i)
    for (auto f : free) mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), e(i, f).get_den_mpz_t());

  std::vector<Vec<Integer>> G(k, Vec<Integer>(k, 0));
  for (std::size_t i = 0; i < k; ++i) G[i][i] = 1;
  if (D != 1) {
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      Vec<Integer> c(k);
      for (std::size_t j = 0; j < k; ++j) c[j] = Rational(e(i, free[j]) * D).get_num();
      Vec<Integer> row(G.size() + 1);
      bool trivial = true;
      for (std::size_t g = 0; g < G.size(); ++g) {
        Integer s = 0;
        for (std::size_t j = 0; j < k; ++j) s += c[j] * G[g][j];
        mpz_fdiv_r(s.get_mpz_t(), s.get_mpz_t(), D.get_mpz_t());
        if (sgn(s) != 0) trivial = false;
        row[g] = s;
      }
      if (trivial) continue;
      row[G.size()] = D;
      auto ker = row_kernel(row);
      std::vector<Vec<Integer>> gens;
      for (const auto& y : ker) {
        Vec<Integer> z(k, 0);
        for (std::size_t g = 0; g < G.size(); ++g)
          if (sgn(y[g]) != 0)
            for (std::size_t j = 0; j < k; ++j) z[j] += y[g] * G[g][j];
        gens.push_back(std::move(z));
      }
      for (std::size_t j = 0; j < k; ++j) {
        Vec<Integer> z(k, 0);
        z[j] = D;
        gens.push_back(std::move(z));
      }
      G = hermite_normal_form(std::move(gens));
      if (G.size() != k) throw InternalError("integer_kernel: congruence lattice lost rank");
    }
  }

  std::vector<Vec<Integer>> basis;
  for (const auto& z : G) {
    Vec<Rational> x(m.cols(), Rational(0));
    for (std::size_t j = 0; j < k; ++j) x[free[j]] = z[j];
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      Rational s = 0;
      for (std::size_t j = 0; j < k; ++j) s -= e(i, free[j]) * z[j];
      x[pivots[i]] = s;
    }
    Vec<Integer> v(m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (x[c].get_den() != 1) throw InternalError("integer_kernel: non-integral lattice vector");
      v[c] = x[c].get_num();
    }
    basis.push_back(std::move(v));
  }
  return lattice_reduce(std::move(basis));
}

std::vector<Vec<Integer>> lattice_reduce(std::vector<Vec<Integer>> b) {
  const std::size_t n = b.size();
  if (n == 0) return b;
  const std::size_t m = b[0].size();
  for (const auto& v : b)
    if (v.size() != m) throw ContractError("lattice_reduce: ragged basis");
  const Rational delta(99, 100);

  std::vector<std::vector<Rational>> mu(n, std::vector<Rational>(n, 0));
  std::vector<Rational> B(n);
  std::vector<Vec<Rational>> bs(n, Vec<Rational>(m));
  auto dot = [&](const Vec<Rational>& x, const Vec<Rational>& y) {
    Rational s = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (sgn(x[i]) != 0 && sgn(y[i]) != 0) s += x[i] * y[i];
    return s;
  };
  auto gso = [&]() {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t c = 0; c < m; ++c) bs[i][c] = b[i][c];
      Vec<Rational> bi = bs[i];
      for (std::size_t j = 0; j < i; ++j) {
        mu[i][j] = dot(bi, bs[j]) / B[j];
        if (sgn(mu[i][j]) != 0)
          for (std::size_t c = 0; c < m; ++c) bs[i][c] -= mu[i][j] * bs[j][c];
      }
      B[i] = dot(bs[i], bs[i]);
      if (sgn(B[i]) == 0) throw ContractError("lattice_reduce: linearly dependent basis");
    }
  };
  gso();
  std::size_t k = 1;
  while (k < n) {
    for (std::size_t jj = k; jj-- > 0;) {
      Integer q = round_of(mu[k][jj]);
      if (sgn(q) == 0) continue;
      for (std::size_t c = 0; c < m; ++c) b[k][c] -= q * b[jj][c];
      for (std::size_t l = 0; l < jj; ++l) mu[k][l] -= q * mu[jj][l];
      mu[k][jj] -= q;
    }
    if (B[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1]) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      gso();
      k = std::max<std::size_t>(k - 1, 1);
    }
  }
  for (auto& v : b) sign_normalise(v);
  return b;
}

Vec<Integer> shortest_sup_norm_vector(const std::vector<Vec<Integer>>& b, std::size_t max_dim) {
  if (b.empty()) throw ContractError("shortest_sup_norm_vector: empty lattice");
  auto better = [](const Vec<Integer>& x, const Vec<Integer>& y) {
    Integer sx = sup_norm(x), sy = sup_norm(y);
    if (sx != sy) return sx < sy;
    Integer nx = 0, ny = 0;
    for (const auto& v : x) nx += v * v;
    for (const auto& v : y) ny += v * v;
    if (nx != ny) return nx < ny;
    return x > y;
  };
  Vec<Integer> best = b[0];
  for (const auto& v : b)
    if (better(v, best)) best = v;
  const std::size_t k = b.size(), m = b[0].size();
  if (k == 1 || k > max_dim) return best;

  // Gram-Schmidt in long double on the (already reduced) basis.
  std::vector<std::vector<long double>> bs(k, std::vector<long double>(m)), mu(k, std::vector<long double>(k, 0));
  std::vector<long double> B(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t c = 0; c < m; ++c) bs[i][c] = b[i][c].get_d();
    for (std::size_t j = 0; j < i; ++j) {
      long double d = 0;
      for (std::size_t c = 0; c < m; ++c) d += static_cast<long double>(b[i][c].get_d()) * bs[j][c];
      mu[i][j] = d / B[j];
      for (std::size_t c = 0; c < m; ++c) bs[i][c] -= mu[i][j] * bs[j][c];
    }
    B[i] = 0;
    for (std::size_t c = 0; c < m; ++c) B[i] += bs[i][c] * bs[i][c];
  }
  auto radius2 = [&]() {
    long double s = sup_norm(best).get_d();
    return s * s * static_cast<long double>(m) * (1 + 1e-9L) + 1e-6L;
  };
  long double R2 = radius2();
  std::vector<long> x(k, 0);
  std::size_t nodes = 0;
  const std::size_t node_cap = 2000000;
  std::function<void(std::size_t, long double)> rec = [&](std::size_t i, long double partial) {
    if (++nodes > node_cap) return;
    long double c = 0;
    for (std::size_t j = i + 1; j < k; ++j) c -= x[j] * mu[j][i];
    long double rem = (R2 - partial) / B[i];
    if (rem < 0) return;
    long double w = std::sqrt(rem);
    long lo = static_cast<long>(std::ceil(c - w)), hi = static_cast<long>(std::floor(c + w));
    for (long v = lo; v <= hi; ++v) {
      x[i] = v;
      long double diff = v - c;
      long double p2 = partial + diff * diff * B[i];
      if (i == 0) {
        bool nonzero = false;
        for (auto t : x) nonzero |= (t != 0);
        if (!nonzero) continue;
        Vec<Integer> cand(m, 0);
        for (std::size_t j = 0; j < k; ++j)
          if (x[j] != 0)
            for (std::size_t cc = 0; cc < m; ++cc) cand[cc] += Integer(x[j]) * b[j][cc];
        sign_normalise(cand);
        if (better(cand, best)) {
          best = cand;
          R2 = radius2();
        }
      } else {
        rec(i - 1, p2);
      }
    }
    x[i] = 0;
  };
  rec(k - 1, 0);
  return best;
}

}  // namespace thue
