#include "thue/descent/descent.hpp"

#include <algorithm>
#include <iomanip>
#include <set>
#include <sstream>

namespace thue::descent {

using siegel::format_set;
using thue::to_string;

std::vector<IndexSet> vanishing_subsum_check(std::span<const NFElem> values) {
  const std::size_t r = values.size();
  if (r > 16) throw ContractError("vanishing_subsum_check: at most 16 values");
  for (const auto& v : values)
    if (is_zero(v)) throw ContractError("vanishing_subsum_check: zero value (exclude zeros and poles first)");
  const unsigned full = (1u << r) - 1;
  std::vector<unsigned> zero_masks;
  for (unsigned mask = 1; mask < full; ++mask) {
    NFElem sum(0);
    for (std::size_t i = 0; i < r; ++i)
      if (mask >> i & 1) sum += values[i];
    if (is_zero(sum)) zero_masks.push_back(mask);
  }
  std::vector<IndexSet> out;
  for (unsigned m : zero_masks) {
    bool minimal = std::none_of(zero_masks.begin(), zero_masks.end(),
                                [&](unsigned o) { return o != m && (o & m) == o; });
    if (!minimal) continue;
    IndexSet s;
    for (std::size_t i = 0; i < r; ++i)
      if (m >> i & 1) s.push_back(static_cast<int>(i));
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<IndexSet> vanishing_subsum_check(std::span<const AlgebraicNumber> values) {
  std::vector<NFElem> v;
  for (const auto& a : values) v.push_back(a.value);
  return vanishing_subsum_check(v);
}

namespace {

std::set<int> union_of(const std::vector<Stage>& stages, std::size_t count) {
  std::set<int> u;
  for (std::size_t j = 0; j < count; ++j) u.insert(stages[j].lambda.begin(), stages[j].lambda.end());
  return u;
}

std::vector<IndexSet> lambdas_of(const std::vector<Stage>& stages, std::size_t count) {
  std::vector<IndexSet> out;
  for (std::size_t j = 0; j < count; ++j) out.push_back(stages[j].lambda);
  return out;
}

bool contains(const std::set<int>& s, int x) { return s.count(x) > 0; }
bool contains(const IndexSet& s, int x) { return std::find(s.begin(), s.end(), x) != s.end(); }

}  // namespace

DescentState build_skeleton(std::span<const RationalFunction> fs, unsigned n, const DescentConfig& cfg) {
  if (fs.size() < 2) throw ContractError("build_skeleton: need at least two functions");
  if (n == 0) throw ContractError("build_skeleton: n must be positive");
  DescentState st;
  st.fs.assign(fs.begin(), fs.end());
  st.n = n;
  st.r = fs.size();
  st.d = ff::joint_divisor(fs).d;
  st.q0 = cfg.q0 ? *cfg.q0 : ff::default_base_point(fs);
  const int r = static_cast<int>(st.r);

  siegel::VanishingConfig vc;
  vc.max_N = cfg.max_N;
  if (cfg.height_cap) vc.height_cap = static_cast<double>(n) * static_cast<double>(cfg.K);

  std::vector<int> phi_prev(r, 1);
  for (int j = 1;; ++j) {
    const std::size_t done = st.stages.size();
    const auto U = union_of(st.stages, done);
    if (j > 1) {
      auto comps = siegel::connected_components(lambdas_of(st.stages, done));
      if (comps.size() == 1 && static_cast<int>(U.size()) == r) break;
    }
    if (j > r) throw InternalError("build_skeleton: more than r stages\n" + st.report());

    Stage stage;
    if (j > 1) {
      const auto& last = st.stages.back().lambda;
      const auto Uold = union_of(st.stages, done - 1);
      const auto& Jprev = st.stages.back().J;
      bool meets = std::any_of(last.begin(), last.end(), [&](int i) { return contains(Uold, i); });
      if (!meets) {
        stage.J = Jprev;
        stage.J.push_back(*std::min_element(last.begin(), last.end()));
      } else {
        for (const auto& C : siegel::connected_components(lambdas_of(st.stages, done))) {
          auto it = std::find_if(Jprev.begin(), Jprev.end(), [&](int i) { return contains(C, i); });
          if (it == Jprev.end()) throw InternalError("build_skeleton: component without a J element\n" + st.report());
          int best = *it;
          for (int i : Jprev)
            if (contains(C, i)) best = std::min(best, i);
          stage.J.push_back(best);
        }
      }
      std::sort(stage.J.begin(), stage.J.end());
    }

    std::vector<siegel::Budget> constraints;
    for (int i = 0; i < r; ++i) {
      if (j > 1 && contains(U, i) && !contains(stage.J, i))
        constraints.push_back(siegel::Budget::fixed(st.stages[phi_prev[i] - 1].N - 1));
      else
        constraints.push_back(siegel::Budget::search());
    }
    siegel::VanishingResult res;
    try {
      res = siegel::minimal_vanishing_order(fs, n, constraints, st.q0, vc);
    } catch (const ContractError& e) {
      throw InternalError("build_skeleton: stage " + std::to_string(j) + " admits no N (" + e.what() + ")\n" +
                          st.report());
    }
    stage.N = res.N;
    stage.lambda = res.lambda;
    stage.budgets = res.budgets;
    stage.tuple = std::move(res.tuple);
    stage.phi.assign(r, j);
    for (int i = 0; i < r; ++i)
      if (contains(U, i) && !contains(stage.J, i)) stage.phi[i] = phi_prev[i];
    phi_prev = stage.phi;
    st.stages.push_back(std::move(stage));
  }
  return st;
}

DescentState specialize(const DescentState& skeleton, const AlgebraicNumber& P, const DescentConfig& cfg) {
  DescentState st = skeleton;
  st.P = P;
  auto support = ff::support_set(st.fs, st.q0);
  if (support.contains(ff::Place::of(P))) throw ContractError("specialize: P lies in S");
  st.w.clear();
  for (const auto& f : st.fs) st.w.push_back(f.eval(P.value).pow(st.n));

  const HeightValue hP = height_algebraic(P);
  std::vector<Vec<NFElem>> all;
  std::size_t prev_dim = 0;
  long tsum = 0;
  const long nd = static_cast<long>(st.n) * st.d;
  for (auto& stage : st.stages) {
    stage.ortho = siegel::ortho_basis(stage.lambda, st.w).basis;
    all.insert(all.end(), stage.ortho.begin(), stage.ortho.end());
    stage.span_dim = siegel::span_dimension(all);
    stage.t = static_cast<long>(stage.span_dim - prev_dim);
    prev_dim = stage.span_dim;

    long weighted = 0;
    for (const auto& earlier : st.stages) {
      if (&earlier == &stage) break;
      weighted += earlier.t * earlier.N;
    }
    stage.claim_iv_lhs = weighted + (static_cast<long>(st.r) - 1 - tsum) * stage.N;
    stage.claim_iv_slack = stage.claim_iv_lhs - nd;
    tsum += stage.t;

    stage.cert.reset();
    stage.basis_height_excess = 0;
    if (cfg.wronskian_bases) {
      stage.cert = siegel::wronskian_basis(stage.lambda, stage.tuple.A, st.fs, st.n, P, stage.budgets);
      double worst = -1e300;
      bool exact = true;
      for (const auto& h : stage.cert->heights) {
        if (!h) exact = false;
        else worst = std::max(worst, h->hi);
      }
      if (exact) stage.basis_height_excess = worst - static_cast<double>(stage.N) * hP.lo;
    }
  }
  auto bad = st.violations();
  if (!bad.empty()) {
    std::string msg = "specialize: invariants violated";
    for (const auto& b : bad) msg += "\n  " + b;
    throw InternalError(msg + "\n" + st.report());
  }
  return st;
}

DescentState run_claim_construction(std::span<const RationalFunction> fs, unsigned n, const AlgebraicNumber& P,
                                    const DescentConfig& cfg) {
  return specialize(build_skeleton(fs, n, cfg), P, cfg);
}

std::vector<std::string> DescentState::violations() const {
  std::vector<std::string> out;
  auto fail = [&](std::size_t j, const std::string& what) { out.push_back("stage " + std::to_string(j + 1) + ": " + what); };
  if (stages.empty()) {
    out.push_back("no stages");
    return out;
  }
  const std::size_t S = stages.size();
  for (std::size_t j = 0; j < S; ++j) {
    const auto& st = stages[j];
    if (j && st.N < stages[j - 1].N) fail(j, "N_j decreases (i)");
    if (st.lambda.size() < 2) fail(j, "|Lambda_j| < 2");
    for (int p : st.phi)
      if (p < 1 || p > static_cast<int>(j) + 1) fail(j, "phi_j out of range");
    if (j == 0) {
      if (!st.J.empty()) fail(j, "J_1 nonempty");
      continue;
    }
    const auto prev = lambdas_of(stages, j);
    for (const auto& C : siegel::connected_components(prev))
      if (std::all_of(st.lambda.begin(), st.lambda.end(), [&](int i) { return contains(C, i); }))
        fail(j, "Lambda_j inside the component " + format_set(C) + " (ii)");
    const auto U = union_of(stages, j);
    for (int i : st.J)
      if (!contains(U, i)) fail(j, "J_j not inside the previous union");
    for (const auto& C : siegel::connected_components(prev)) {
      auto hits = std::count_if(st.J.begin(), st.J.end(), [&](int i) { return contains(C, i); });
      if (hits != 1) fail(j, "|J_j cap " + format_set(C) + "| != 1");
    }
    const auto Uold = union_of(stages, j - 1);
    for (int i : st.J) {
      if (contains(Uold, i) && !contains(stages[j - 1].J, i)) fail(j, "J_j meets Lambda_1..Lambda_{j-2} minus J_{j-1}");
      if (stages[j - 1].phi[i] != static_cast<int>(j)) fail(j, "phi_{j-1} != j-1 on J_j");
    }
  }
  {
    auto comps = siegel::connected_components(lambdas_of(stages, S));
    if (comps.size() != 1 || union_of(stages, S).size() != r) out.push_back("final collection not connected onto {1..r} (iii)");
  }
  if (w.empty()) return out;

  long tsum = 0;
  for (std::size_t j = 0; j < S; ++j) {
    const auto& st = stages[j];
    if (j) {
      long lhs = static_cast<long>(union_of(stages, j).size()) - static_cast<long>(st.J.size());
      if (lhs != static_cast<long>(stages[j - 1].span_dim) || lhs != tsum) fail(j, "count dim(V_1+...+V_j) = sum t fails");
      for (std::size_t jp = 0; jp < j; ++jp) {
        long cnt = std::count(st.phi.begin(), st.phi.end(), static_cast<int>(jp) + 1);
        if (cnt != stages[jp].t) fail(j, "fiber of phi over " + std::to_string(jp + 1) + " has wrong size");
      }
    }
    tsum += st.t;
    if (st.cert) {
      if (st.cert->basis.size() + 1 != st.lambda.size()) fail(j, "Wronskian basis has the wrong size (v)");
      if (siegel::span_dimension(st.cert->basis) != st.cert->basis.size()) fail(j, "Wronskian basis dependent (v)");
      for (const auto& v : st.cert->basis) {
        NFElem dot(0);
        for (std::size_t i = 0; i < r; ++i) {
          dot += v[i] * w[i];
          if (!contains(st.lambda, static_cast<int>(i)) && !is_zero(v[i])) fail(j, "basis vector leaves V_Lambda (v)");
        }
        if (!is_zero(dot)) fail(j, "basis vector not orthogonal to w (v)");
      }
    }
  }
  if (tsum != static_cast<long>(r) - 1) out.push_back("sum of t_j != r - 1");
  if (stages.back().span_dim != r - 1) out.push_back("V_1 + ... + V_s != w-perp");
  if (stages.back().t < 1) out.push_back("t_s < 1");
  return out;
}

std::string DescentState::report() const {
  std::ostringstream o;
  o << "descent-state\n  n = " << n << "  r = " << r << "  d = " << d << "  q0 = " << to_string(q0) << "\n  fs =";
  for (const auto& f : fs) o << " " << f.to_string();
  o << "\n";
  if (!w.empty()) {
    o << "  P = " << to_string(P.value) << " (minpoly " << to_string(minimal_polynomial(P.value)) << ")\n  w =";
    for (const auto& x : w) o << " " << to_string(x);
    o << "\n";
  }
  for (std::size_t j = 0; j < stages.size(); ++j) {
    const auto& st = stages[j];
    o << "  stage " << j + 1 << ": N = " << st.N << "  Lambda = " << format_set(st.lambda) << "  J = " << format_set(st.J)
      << "  phi = (";
    for (std::size_t i = 0; i < st.phi.size(); ++i) o << (i ? "," : "") << st.phi[i];
    o << ")  budgets = (";
    for (std::size_t i = 0; i < st.budgets.size(); ++i) o << (i ? "," : "") << st.budgets[i];
    o << ")";
    if (!w.empty())
      o << "  t = " << st.t << "  dim = " << st.span_dim << "  iv-slack = " << st.claim_iv_slack;
    o << "\n";
  }
  return o.str();
}

Inequality assemble_inequality(const DescentState& state, const Vec<NFElem>& alpha) {
  if (state.w.empty()) throw ContractError("assemble_inequality: state not specialized at a point");
  if (alpha.size() != state.r) throw ContractError("assemble_inequality: alpha has the wrong length");
  if (state.d <= 0) throw ContractError("assemble_inequality: d = 0");
  NFElem dot(0);
  for (std::size_t i = 0; i < state.r; ++i) dot += alpha[i] * state.w[i];
  if (!is_zero(dot)) throw ContractError("assemble_inequality: alpha is not orthogonal to w");
  const std::size_t S = state.s();
  std::vector<Vec<NFElem>> earlier;
  for (std::size_t j = 0; j + 1 < S; ++j)
    earlier.insert(earlier.end(), state.stages[j].ortho.begin(), state.stages[j].ortho.end());
  std::size_t before = siegel::span_dimension(earlier);
  earlier.push_back(alpha);
  if (siegel::span_dimension(earlier) == before)
    throw ContractError("assemble_inequality: basis replacement fails, alpha lies in V_1 + ... + V_{s-1} "
                        "(the equation has a proper vanishing subsum)");
  if (state.stages.back().t < 1) throw InternalError("assemble_inequality: t_s < 1");

  Inequality q;
  const Rational n(static_cast<long>(state.n)), d(state.d);
  Rational sigma = 0;
  std::vector<Rational> a, x;
  for (std::size_t j = 0; j < S; ++j) {
    const auto& st = state.stages[j];
    Rational xj = Rational(st.N) / n;
    sigma += Rational(st.t) * xj;
    q.lambda += Rational(j + 1 == S ? st.t - 1 : st.t) * xj;
    if (st.t > 0) {
      a.push_back(Rational(st.t));
      x.push_back(xj);
    }
  }
  q.lambda -= d;
  q.tau = sigma > d ? sigma : d;
  q.tau_slack = q.tau - d;
  const Rational rho(static_cast<long>(state.r) - 1);
  q.convex = siegel::convex_bound(a, x, q.tau, rho);
  q.lambda_bound = -q.tau / rho + q.tau_slack;
  q.margin = q.lambda_bound - q.lambda;
  q.holds = q.convex.holds && sgn(q.margin) >= 0;
  return q;
}

std::string to_string(Classification c) {
  switch (c) {
    case Classification::certified: return "certified";
    case Classification::excluded_point: return "excluded-point";
    case Classification::vanishing_subsum: return "vanishing-subsum";
  }
  return "?";
}

namespace {

std::string fmt(double x) {
  std::ostringstream o;
  o << std::setprecision(12) << x;
  return o.str();
}

}  // namespace

std::string CertifierReport::csv_header() { return "family-id,n,alpha-height,point-minpoly,point-height,bound,margin"; }

std::string CertifierReport::csv_row() const {
  return family_id + "," + std::to_string(n) + "," + fmt(h_alpha.mid()) + "," + to_string(point_minpoly) + "," +
         fmt(hP.mid()) + "," + fmt(bound) + "," + fmt(margin);
}

CertifierReport certify_solution(std::span<const RationalFunction> fs, std::span<const Rational> alpha, unsigned n,
                                 const AlgebraicNumber& P, double C, const DescentState* skeleton) {
  if (fs.size() != alpha.size()) throw ContractError("certify_solution: |fs| != |alpha|");
  if (fs.size() < 2) throw ContractError("certify_solution: need at least two functions");
  for (const auto& a : alpha)
    if (sgn(a) == 0) throw ContractError("certify_solution: alpha has a zero entry");
  RationalFunction combo;
  for (std::size_t i = 0; i < fs.size(); ++i) combo += RationalFunction(alpha[i]) * fs[i].pow(n);
  if (combo.is_zero()) throw ContractError("certify_solution: sum alpha_i f_i^n is identically zero");

  CertifierReport rep;
  rep.fs.assign(fs.begin(), fs.end());
  rep.alpha.assign(alpha.begin(), alpha.end());
  rep.n = n;
  rep.P = P;
  rep.point_minpoly = minimal_polynomial(P.value);
  rep.C = C;
  rep.hP = height_algebraic(P);
  rep.h_alpha = projective_height(alpha);
  rep.bound = static_cast<double>(fs.size()) * rep.h_alpha.hi / n;
  rep.margin = rep.bound + C - rep.hP.hi;

  if (ff::support_set(fs).contains(ff::Place::of(P))) {
    rep.classification = Classification::excluded_point;
    return rep;
  }
  std::vector<NFElem> values;
  NFElem sum(0);
  for (std::size_t i = 0; i < fs.size(); ++i) {
    values.push_back(NFElem(alpha[i]) * fs[i].eval(P.value).pow(n));
    sum += values.back();
  }
  if (!is_zero(sum)) throw ContractError("certify_solution: the equation fails at P");
  rep.vanishing_subsets = vanishing_subsum_check(values);
  if (!rep.vanishing_subsets.empty()) {
    rep.classification = Classification::vanishing_subsum;
    return rep;
  }
  DescentConfig cfg;
  cfg.wronskian_bases = false;
  DescentState st = specialize(skeleton ? *skeleton : build_skeleton(fs, n, cfg), P, cfg);
  Vec<NFElem> a;
  for (const auto& x : alpha) a.push_back(NFElem(x));
  rep.inequality = assemble_inequality(st, a);
  return rep;
}

double fit_constant(std::span<const CertifierReport> reports) {
  double c = 0;
  for (const auto& r : reports)
    if (r.classification == Classification::certified) c = std::max(c, r.hP.hi - r.bound);
  return c;
}

}  // namespace thue::descent
