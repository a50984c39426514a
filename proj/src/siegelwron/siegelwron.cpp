#include "thue/siegelwron/siegelwron.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace thue::siegel {

namespace {

QPoly x_power(const Rational& q0, long k) { return QPoly{Rational(-q0), Rational(1)}.pow(static_cast<unsigned>(k)); }

QPoly lcm(const QPoly& a, const QPoly& b) { return (a * b) / gcd(a, b); }

std::vector<int> active_indices(std::span<const long> Ms) {
  std::vector<int> out;
  for (std::size_t i = 0; i < Ms.size(); ++i)
    if (Ms[i] >= 0) out.push_back(static_cast<int>(i));
  return out;
}

}  // namespace

std::string format_set(const IndexSet& s) {
  std::string out = "{";
  for (std::size_t k = 0; k < s.size(); ++k) out += (k ? "," : "") + std::to_string(s[k] + 1);
  return out + "}";
}

std::vector<RationalFunction> SiegelInstance::assemble(const Vec<Rational>& alpha) const {
  if (alpha.size() != columns.size()) throw ContractError("assemble: wrong number of unknowns");
  std::vector<std::vector<Rational>> num(fs.size());
  for (std::size_t i = 0; i < fs.size(); ++i)
    if (Ms[i] >= 0) num[i].assign(Ms[i] + 1, Rational(0));
  for (std::size_t c = 0; c < columns.size(); ++c) num[columns[c].first][columns[c].second] = alpha[c];
  std::vector<RationalFunction> A(fs.size());
  for (std::size_t i = 0; i < fs.size(); ++i)
    if (Ms[i] >= 0) A[i] = RationalFunction(QPoly(num[i]), x_power(q0, Ms[i]));
  return A;
}

SiegelInstance build_instance(std::span<const RationalFunction> fs, unsigned n, std::span<const long> Ms,
                              const Rational& q0, bool with_jet_system) {
  if (fs.size() != Ms.size()) throw ContractError("build_instance: |fs| != |Ms|");
  if (fs.size() < 2) throw ContractError("build_instance: need at least two functions");
  for (const auto& f : fs)
    if (f.is_zero()) throw ContractError("build_instance: zero function");
  auto support = ff::support_set(fs, q0);  // throws when Q lies in S0
  (void)support;

  SiegelInstance inst;
  inst.fs.assign(fs.begin(), fs.end());
  inst.n = n;
  inst.Ms.assign(Ms.begin(), Ms.end());
  inst.q0 = q0;
  const auto active = active_indices(Ms);
  for (int i : active) {
    inst.S += Ms[i];
    inst.M = std::max(inst.M, Ms[i]);
    for (long j = 0; j <= Ms[i]; ++j) inst.columns.emplace_back(i, static_cast<int>(j));
  }
  if (active.size() >= 2) {
    std::vector<RationalFunction> act;
    for (int i : active) act.push_back(fs[i]);
    inst.d = ff::joint_divisor(act).d;
  }
  inst.T = inst.M + inst.d * static_cast<long>(n);
  if (Rational(inst.S) > Rational(inst.M + inst.d * static_cast<long>(n)) + inst.c0)
    inst.rho = Rational(inst.M + inst.d * static_cast<long>(n)) /
               (Rational(inst.S - inst.M - inst.d * static_cast<long>(n)) - inst.c0);
  if (active.empty()) return inst;

  // Coefficient matching: x^M sum_i A_i f_i^n D = sum_i p_i x^{M - M_i} N_i (D / D_i).
  std::vector<RationalFunction> powers(fs.size());
  QPoly D = QPoly::constant(1);
  for (int i : active) {
    powers[i] = fs[i].pow(n);
    D = lcm(D, powers[i].den());
  }
  std::vector<QPoly> colpolys;
  int maxdeg = 0;
  for (auto [i, j] : inst.columns) {
    QPoly c = QPoly::monomial(Rational(1), j) * x_power(q0, inst.M - Ms[i]) * powers[i].num() * (D / powers[i].den());
    maxdeg = std::max(maxdeg, c.degree());
    colpolys.push_back(std::move(c));
  }
  inst.system = Matrix<Rational>(maxdeg + 1, inst.columns.size());
  for (std::size_t c = 0; c < colpolys.size(); ++c)
    for (int k = 0; k <= colpolys[c].degree(); ++k) inst.system(k, c) = colpolys[c].coeff(k);

  if (with_jet_system) {
    // psi = x^M phi / f_ref^n has no pole at Q and at most M + dn poles, so
    // vanishing of delta_0..delta_T at Q forces psi = 0.
    const int ref = active.back();
    const std::size_t rows = static_cast<std::size_t>(inst.T) + 1;
    std::vector<std::vector<Rational>> series(fs.size());
    for (int i : active) {
      auto s = ff::taylor_at((fs[i] / fs[ref]).pow(n), NFElem(q0), static_cast<unsigned>(inst.T));
      for (const auto& v : s) series[i].push_back(v.to_rational());
    }
    inst.jet_system = Matrix<Rational>(rows, inst.columns.size());
    for (std::size_t c = 0; c < inst.columns.size(); ++c) {
      auto [i, j] = inst.columns[c];
      QPoly p = QPoly::monomial(Rational(1), j) * x_power(q0, inst.M - Ms[i]);
      auto tc = p.taylor_coefficients<Rational>(q0);
      for (std::size_t l = 0; l < rows; ++l) {
        Rational acc = 0;
        for (std::size_t a = 0; a <= l && a < tc.size(); ++a)
          if (sgn(tc[a]) != 0) acc += tc[a] * series[i][l - a];
        inst.jet_system(l, c) = acc;
      }
    }
  }
  return inst;
}

std::size_t kernel_dimension(const SiegelInstance& inst) {
  if (inst.columns.empty()) return 0;
  return inst.columns.size() - rank(inst.system);
}

bool kernels_agree(const SiegelInstance& inst) {
  if (inst.columns.empty()) return true;
  if (inst.jet_system.cols() != inst.columns.size()) throw ContractError("kernels_agree: jet system not built");
  auto k1 = exact_kernel(inst.system), k2 = exact_kernel(inst.jet_system);
  if (k1.size() != k2.size()) return false;
  if (k1.empty()) return true;
  auto both = k1;
  both.insert(both.end(), k2.begin(), k2.end());
  return vector_rank(both) == k1.size();
}

AuxiliaryTuple small_solution(const SiegelInstance& inst) {
  if (inst.columns.empty()) throw ContractError("small_solution: no unknowns");
  auto kern = integer_kernel(inst.system);
  if (kern.empty())
    throw ContractError("small_solution: trivial kernel (rank " + std::to_string(rank(inst.system)) + " of " +
                        std::to_string(inst.columns.size()) + " unknowns)");
  auto reduced = lattice_reduce(kern);
  Vec<Integer> best = shortest_sup_norm_vector(reduced);

  AuxiliaryTuple out;
  out.alpha = best;
  Vec<Rational> alpha(best.begin(), best.end());
  out.A = inst.assemble(alpha);
  std::vector<Rational> coords(alpha.begin(), alpha.end());
  out.height = projective_height(coords);
  RationalFunction sum;
  for (std::size_t i = 0; i < inst.fs.size(); ++i) {
    out.function_heights.push_back(height_function(out.A[i]));
    if (!out.A[i].is_zero()) {
      out.support.push_back(static_cast<int>(i));
      sum += out.A[i] * inst.fs[i].pow(inst.n);
    }
  }
  out.verified = sum.is_zero() && !out.support.empty();
  if (!out.verified) throw InternalError("small_solution: kernel vector fails symbolic re-verification");
  return out;
}

namespace {

std::vector<long> budgets_at(std::span<const Budget> cs, long N) {
  std::vector<long> b;
  for (const auto& c : cs) b.push_back(c.searched ? N : c.frozen);
  return b;
}

// Subsets of {0..r-1} of size k in lexicographic order.
void subsets_of_size(int r, int k, const std::function<bool(const IndexSet&)>& visit) {
  IndexSet s(k);
  std::iota(s.begin(), s.end(), 0);
  while (true) {
    if (visit(s)) return;
    int i = k - 1;
    while (i >= 0 && s[i] == r - k + i) --i;
    if (i < 0) return;
    ++s[i];
    for (int j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
  }
}

}  // namespace

VanishingResult minimal_vanishing_order(std::span<const RationalFunction> fs, unsigned n,
                                        std::span<const Budget> constraints, const Rational& q0,
                                        const VanishingConfig& cfg) {
  if (fs.size() != constraints.size()) throw ContractError("minimal_vanishing_order: |fs| != |constraints|");
  if (std::none_of(constraints.begin(), constraints.end(), [](const Budget& b) { return b.searched; }))
    throw ContractError("minimal_vanishing_order: no searched index");
  VanishingResult res;
  auto nontrivial = [&](long N) {
    ++res.rank_queries;
    auto b = budgets_at(constraints, N);
    return kernel_dimension(build_instance(fs, n, b, q0, false)) > 0;
  };

  // Exponential stepping then bisection on the monotone predicate.
  long lo = -1, hi = 0;
  while (!nontrivial(hi)) {
    lo = hi;
    hi = hi == 0 ? 1 : 2 * hi;
    if (hi > cfg.max_N)
      throw ContractError("minimal_vanishing_order: no nontrivial kernel up to N = " + std::to_string(cfg.max_N));
  }
  while (hi - lo > 1) {
    long mid = lo + (hi - lo) / 2;
    if (nontrivial(mid))
      hi = mid;
    else
      lo = mid;
  }
  long N = hi;

  while (true) {
    auto budgets = budgets_at(constraints, N);
    const int r = static_cast<int>(fs.size());
    std::optional<IndexSet> lambda;
    for (int k = 2; k <= r && !lambda; ++k) {
      subsets_of_size(r, k, [&](const IndexSet& s) {
        std::vector<long> b(r, -1);
        for (int i : s) b[i] = budgets[i];
        if (std::any_of(s.begin(), s.end(), [&](int i) { return b[i] < 0; })) return false;
        ++res.rank_queries;
        if (kernel_dimension(build_instance(fs, n, b, q0, false)) == 0) return false;
        lambda = s;
        return true;
      });
    }
    if (!lambda) throw InternalError("minimal_vanishing_order: kernel nontrivial but no supporting subset");
    std::vector<long> b(r, -1);
    for (int i : *lambda) b[i] = budgets[i];
    auto tuple = small_solution(build_instance(fs, n, b, q0, false));
    if (tuple.support != *lambda) throw InternalError("minimal_vanishing_order: tuple support differs from minimal set");
    double hmax = 0;
    for (const auto& h : tuple.function_heights) hmax = std::max(hmax, h.lo);
    if (cfg.height_cap && hmax > *cfg.height_cap) {
      if (++N > cfg.max_N) throw ContractError("minimal_vanishing_order: height cap never met");
      continue;
    }
    res.N = N;
    res.lambda = *lambda;
    res.tuple = std::move(tuple);
    res.budgets = budgets;
    res.trivial_below = N == 0 || !nontrivial(N - 1);
    if (!res.trivial_below && !cfg.height_cap) throw InternalError("minimal_vanishing_order: monotonicity violated");
    return res;
  }
}

std::vector<IndexSet> connected_components(const std::vector<IndexSet>& sets) {
  const std::size_t s = sets.size();
  for (const auto& L : sets)
    if (L.empty()) throw ContractError("connected_components: empty member set");
  std::vector<std::size_t> parent(s);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (std::size_t a = 0; a < s; ++a)
    for (std::size_t b = a + 1; b < s; ++b) {
      bool meet = std::any_of(sets[a].begin(), sets[a].end(),
                              [&](int x) { return std::find(sets[b].begin(), sets[b].end(), x) != sets[b].end(); });
      if (meet) parent[find(a)] = find(b);
    }
  std::map<std::size_t, std::set<int>> groups;
  for (std::size_t a = 0; a < s; ++a) groups[find(a)].insert(sets[a].begin(), sets[a].end());
  std::vector<IndexSet> out;
  for (auto& [root, members] : groups) out.emplace_back(members.begin(), members.end());
  std::sort(out.begin(), out.end());
  return out;
}

OrthoSpace ortho_basis(const IndexSet& lambda, const Vec<NFElem>& w) {
  if (lambda.empty()) throw ContractError("ortho_basis: empty index set");
  for (const auto& x : w)
    if (thue::is_zero(x)) throw ContractError("ortho_basis: w has a zero entry");
  OrthoSpace o;
  o.r = w.size();
  o.w = w;
  o.lambda = lambda;
  for (std::size_t k = 0; k + 1 < lambda.size(); ++k) {
    Vec<NFElem> v(w.size(), NFElem(0));
    v[lambda[k]] = w[lambda[k + 1]];
    v[lambda[k + 1]] = -w[lambda[k]];
    o.basis.push_back(std::move(v));
  }
  return o;
}

std::size_t span_dimension(const std::vector<Vec<NFElem>>& vs) { return vector_rank(vs); }

std::vector<Rational> minimal_relation(std::span<const RationalFunction> Fs) {
  const std::size_t s = Fs.size();
  if (s < 2) throw ContractError("minimal_relation: need at least two functions");
  // a_s = -1 and sum_{i<s} a_i delta_l F_i = delta_l F_s for l = 0..s-2.
  Matrix<RationalFunction> W(s - 1, s - 1);
  std::vector<RationalFunction> rhs(s - 1);
  for (std::size_t l = 0; l + 1 < s; ++l) {
    for (std::size_t i = 0; i + 1 < s; ++i) W(l, i) = ff::divided_derivative(Fs[i], l);
    rhs[l] = ff::divided_derivative(Fs[s - 1], l);
  }
  RationalFunction det = determinant(W);
  if (det.is_zero()) throw ContractError("relation not minimal: F_1..F_{s-1} are linearly dependent");
  std::vector<Rational> a(s);
  for (std::size_t i = 0; i + 1 < s; ++i) {
    auto Wi = W;
    for (std::size_t l = 0; l + 1 < s; ++l) Wi(l, i) = rhs[l];
    RationalFunction ai = determinant(Wi) / det;
    if (!ai.is_constant()) throw ContractError("no linear relation among the functions");
    a[i] = ai.constant_value();
    if (sgn(a[i]) == 0) throw ContractError("relation not minimal: a coefficient vanishes");
  }
  a[s - 1] = -1;
  RationalFunction check;
  for (std::size_t i = 0; i < s; ++i) check += RationalFunction(a[i]) * Fs[i];
  if (!check.is_zero()) throw ContractError("no linear relation among the functions");
  Rational a1 = a[0];
  for (auto& x : a) x /= a1;
  return a;
}

namespace {

// Strictly increasing vectors of length k with sum e, lexicographic.
bool next_rho(unsigned k, unsigned e, const std::function<bool(const std::vector<unsigned>&)>& visit) {
  std::vector<unsigned> rho(k);
  std::function<bool(unsigned, unsigned, unsigned)> rec = [&](unsigned pos, unsigned lo, unsigned left) {
    if (pos == k) return left == 0 && visit(rho);
    unsigned rest = k - pos - 1;
    for (unsigned v = lo;; ++v) {
      // Remaining entries are at least v+1, ..., v+rest.
      unsigned long need = static_cast<unsigned long>(v) * (rest + 1) + rest * (rest + 1) / 2;
      if (need > left) break;
      rho[pos] = v;
      if (rec(pos + 1, v + 1, left - v)) return true;
    }
    return false;
  };
  return rec(0, 0, e);
}

std::optional<HeightValue> vector_height(const Vec<NFElem>& v) {
  std::vector<Rational> q;
  for (const auto& x : v) {
    if (!x.is_rational()) return std::nullopt;
    q.push_back(x.to_rational());
  }
  return projective_height(q);
}

}  // namespace

WronskianCertificate wronskian_basis(const IndexSet& lambda, std::span<const RationalFunction> As,
                                     std::span<const RationalFunction> fs, unsigned n, const AlgebraicNumber& P,
                                     std::span<const long> Ms) {
  const std::size_t r = fs.size();
  if (As.size() != r || Ms.size() != r) throw ContractError("wronskian_basis: As and Ms must have one entry per f_i");
  if (lambda.size() < 2) throw ContractError("wronskian_basis: |Lambda| must be at least 2");
  const std::size_t s = lambda.size();
  const ff::Place place = ff::Place::of(P);
  auto support = ff::support_set(fs);
  for (const auto& v : support.s0)
    if (v == place) throw ContractError("wronskian_basis: P lies in S");

  WronskianCertificate cert;
  cert.lambda = lambda;
  std::vector<RationalFunction> F;
  for (int i : lambda) F.push_back(As[i] * fs[i].pow(n));
  cert.a = minimal_relation(F);

  std::vector<RationalFunction> head(F.begin(), F.end() - 1);
  cert.Ws = ff::wronskian(head);
  if (cert.Ws.is_zero()) throw ContractError("relation not minimal: W_s = 0");
  cert.ws_relations_verified = true;
  for (std::size_t i = 0; i + 1 < s; ++i) {
    std::vector<RationalFunction> others;
    for (std::size_t j = 0; j < s; ++j)
      if (j != i) others.push_back(F[j]);
    RationalFunction Wi = ff::wronskian(others);
    RationalFunction ratio(cert.a[s - 1] / cert.a[i]);
    if (cert.Ws != ratio * Wi && cert.Ws != -(ratio * Wi)) cert.ws_relations_verified = false;
  }
  if (!cert.ws_relations_verified) throw InternalError("wronskian_basis: W_s = +-(a_s/a_i) W_i fails");

  cert.m0 = ff::order_at(cert.Ws, place);
  std::vector<RationalFunction> fl;
  long sumM = 0, maxM = 0;
  for (int i : lambda) {
    fl.push_back(fs[i]);
    sumM += Ms[i];
    maxM = std::max(maxM, Ms[i]);
  }
  long dl = ff::joint_divisor(fl).d;
  cert.theta = std::max<long>(1, sumM - (maxM + static_cast<long>(n) * dl));
  cert.e = cert.m0 + static_cast<long>((s - 2) * (s - 1) / 2);

  std::vector<std::vector<NFElem>> jets;
  for (const auto& Fi : F) jets.push_back(ff::taylor_at(Fi, P.value, static_cast<unsigned>(cert.e)));
  bool found = next_rho(static_cast<unsigned>(s - 1), static_cast<unsigned>(cert.e), [&](const std::vector<unsigned>& rho) {
    ++cert.rho_tried;
    Matrix<NFElem> Wm(s - 1, s - 1);
    for (std::size_t i = 0; i + 1 < s; ++i)
      for (std::size_t j = 0; j + 1 < s; ++j) Wm(i, j) = jets[i][rho[j]];
    if (thue::is_zero(determinant(Wm))) return false;
    cert.rho = rho;
    return true;
  });
  if (!found) throw InternalError("wronskian_basis: no rho' with ord_P(W_rho') = 0 at weight e = " + std::to_string(cert.e));

  cert.w.assign(r, NFElem(0));
  for (std::size_t i = 0; i < r; ++i) cert.w[i] = fs[i].eval(P.value).pow(n);
  cert.B = Matrix<NFElem>(s, s - 1);
  for (std::size_t k = 0; k < s; ++k) {
    NFElem scale = NFElem(cert.a[k]) / cert.w[lambda[k]];
    for (std::size_t j = 0; j + 1 < s; ++j) cert.B(k, j) = scale * jets[k][cert.rho[j]];
  }
  for (std::size_t j = 0; j + 1 < s; ++j) {
    Vec<NFElem> v(r, NFElem(0));
    for (std::size_t k = 0; k < s; ++k) v[lambda[k]] = cert.B(k, j);
    NFElem dot(0);
    for (std::size_t i = 0; i < r; ++i) dot += v[i] * cert.w[i];
    if (!thue::is_zero(dot)) throw InternalError("wronskian_basis: emitted vector not orthogonal to w");
    cert.heights.push_back(vector_height(v));
    cert.basis.push_back(std::move(v));
  }
  if (span_dimension(cert.basis) != s - 1) throw InternalError("wronskian_basis: emitted vectors are dependent");
  return cert;
}

std::string WronskianCertificate::report(const std::vector<RationalFunction>& fs, unsigned n) const {
  std::ostringstream o;
  o << "wronskian-certificate\n";
  o << "  n = " << n << "\n  fs =";
  for (const auto& f : fs) o << " " << f.to_string();
  o << "\n  Lambda = " << format_set(lambda) << "\n  relation a =";
  for (const auto& x : a) o << " " << to_string(x);
  o << "\n  W_s = " << Ws.to_string() << "\n  m0 = " << m0 << "\n  Theta = " << theta << "\n  e = " << e
    << "\n  rho' = (";
  for (std::size_t j = 0; j < rho.size(); ++j) o << (j ? "," : "") << rho[j];
  o << ")  [" << rho_tried << " tried]\n  w =";
  for (const auto& x : w) o << " " << to_string(x);
  o << "\n";
  for (std::size_t j = 0; j < basis.size(); ++j) {
    o << "  v" << j + 1 << " = (";
    for (std::size_t i = 0; i < basis[j].size(); ++i) o << (i ? ", " : "") << to_string(basis[j][i]);
    o << ")";
    if (heights[j]) o << "  h = " << heights[j]->mid();
    o << "\n";
  }
  return o.str();
}

ConvexBound convex_bound(std::span<const Rational> a, std::span<const Rational> x, const Rational& tau,
                         const Rational& rho) {
  const std::size_t s = a.size();
  if (s == 0 || x.size() != s) throw ContractError("convex_bound: a and x must be nonempty and of equal length");
  if (sgn(tau) <= 0 || sgn(rho) <= 0) throw ContractError("convex_bound: tau and rho must be positive");
  Rational sa = 0, sax = 0;
  for (std::size_t i = 0; i < s; ++i) {
    if (sgn(a[i]) <= 0) throw ContractError("convex_bound: a_i must be positive");
    if (sgn(x[i]) < 0) throw ContractError("convex_bound: x_i must be non-negative");
    if (i && x[i] < x[i - 1]) throw ContractError("convex_bound: x must be non-decreasing");
    sa += a[i];
    sax += a[i] * x[i];
  }
  if (a[s - 1] < 1) throw ContractError("convex_bound: a_s must be at least 1");
  if (sa != rho) throw ContractError("convex_bound: sum of a_i must equal rho");
  if (sax > tau) throw ContractError("convex_bound: sum a_i x_i exceeds tau");
  ConvexBound cb;
  cb.lhs = sax - x[s - 1] - tau;
  cb.bound = -tau / rho;
  cb.slack = cb.lhs - cb.bound;
  cb.holds = sgn(cb.slack) <= 0;
  return cb;
}

}  // namespace thue::siegel
