// thuecert: command-line front end for the certification pipeline.
// Exit codes: 0 success, 2 contract errors and bad flags, 1 internal errors
// or failed suite checks.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "thue/exact/factor.hpp"
#include "thue/harness/harness.hpp"
#include "thue/harness/manifest.hpp"

using namespace thue;
using namespace thue::harness;
using nlohmann::json;
using thue::to_string;

namespace {

std::string fmt(double x) {
  std::ostringstream o;
  o << std::setprecision(12) << x;
  return o.str();
}

json height_json(const HeightValue& h) {
  json j{{"lo", fmt(h.lo)}, {"hi", fmt(h.hi)}, {"value", harness::format_number(h.mid())}};
  if (h.exact) {
    std::string e = "log(" + to_string(h.exact->q) + ")";
    if (h.exact->k != 1) e += "/" + std::to_string(h.exact->k);
    j["exact"] = e;
  }
  return j;
}

json set_json(const siegel::IndexSet& s) {
  json a = json::array();
  for (int i : s) a.push_back(i + 1);
  return a;
}

json functions_json(const std::vector<RationalFunction>& fs) {
  json a = json::array();
  for (const auto& f : fs) a.push_back(f.to_string());
  return a;
}

json integers_json(const std::vector<Integer>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

json point_json(const PointSpec& p) { return {{"minpoly", to_string(p.minpoly)}, {"root", p.root}}; }

std::vector<QPoly> split_list(const std::string& s) {
  std::vector<QPoly> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ';')) {
    auto f = parse_function(item);
    if (f.den().degree() != 0) throw ContractError("expected a polynomial: " + item);
    out.push_back(f.num());
  }
  return out;
}

std::vector<unsigned> split_naturals(const std::string& s) {
  std::vector<unsigned> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    Rational q = parse_rational(item);
    if (q.get_den() != 1 || sgn(q) <= 0) throw ContractError("expected positive integers: " + s);
    out.push_back(static_cast<unsigned>(q.get_num().get_ui()));
  }
  return out;
}

HeightBound height_flag(const std::string& s) {
  if (s.rfind("log ", 0) == 0) {
    Rational B = parse_rational(s.substr(4));
    if (B.get_den() != 1 || B < 2) throw ContractError("--H: expected \"log B\" with an integer B >= 2");
    return HeightBound::log_of(B.get_num().get_si());
  }
  double h = std::stod(s);
  if (!(h > 0)) throw ContractError("--H must be positive");
  return HeightBound::from_log(h);
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw ContractError("cannot write " + out_path);
  f << text;
}

int suite_status(const SuiteReport& rep) {
  std::cerr << rep.summary();
  return rep.ok() ? 0 : 1;
}

// Subcommands.

int run_heights(const std::string& rational, const std::string& minpoly, const std::string& function,
                const std::string& tuple, const std::string& machine, const std::string& point,
                const std::string& out) {
  json j;
  int given = !rational.empty() + !minpoly.empty() + !function.empty() + !tuple.empty() + !machine.empty();
  if (given != 1) throw ContractError("heights: give exactly one of --rational, --minpoly, --function, --tuple, --machine");
  if (!rational.empty()) {
    j = {{"rational", rational}, {"height", height_json(height_rational(parse_rational(rational)))}};
  } else if (!minpoly.empty()) {
    auto f = parse_function(minpoly);
    if (f.den().degree() != 0 || f.num().degree() < 1) throw ContractError("--minpoly: expected a polynomial");
    auto m = primitive_part(f.num());
    if (!is_irreducible(m, 64)) throw ContractError("--minpoly: polynomial is reducible");
    j = {{"minpoly", to_string(m)}, {"height", height_json(height_of_minpoly(m))}};
  } else if (!function.empty()) {
    auto f = parse_function(function);
    j = {{"function", f.to_string()}, {"height", height_json(height_function(f))}};
  } else if (!tuple.empty()) {
    std::vector<Rational> xs;
    std::stringstream in(tuple);
    std::string item;
    while (std::getline(in, item, ',')) xs.push_back(parse_rational(item));
    j = {{"tuple", tuple}, {"height", height_json(projective_height(xs))}};
  } else {
    if (point.empty()) throw ContractError("--machine needs --point");
    std::vector<RationalFunction> fs;
    std::stringstream in(machine);
    std::string item;
    while (std::getline(in, item, ';')) fs.push_back(parse_function(item));
    Rational P = parse_rational(point);
    j = {{"functions", functions_json(fs)},
         {"point", to_string(P)},
         {"residual", height_json(HeightValue::of(height_machine_residual(fs, P)))}};
  }
  emit(out, j.dump(2) + "\n");
  return 0;
}

int run_siegel(const ProblemManifest& m, const std::string& out) {
  if (m.functions.empty()) throw ContractError("siegel: manifest needs 'functions'");
  Rational q0 = m.q0 ? *m.q0 : ff::default_base_point(m.functions);
  json runs = json::array();
  for (unsigned n = m.n.lo; n <= m.n.hi; ++n) {
    std::vector<siegel::Budget> b(m.r(), siegel::Budget::search());
    siegel::VanishingConfig cfg;
    if (m.height_cap) cfg.height_cap = static_cast<double>(n) * m.K;
    auto v = siegel::minimal_vanishing_order(m.functions, n, b, q0, cfg);
    json A = json::array();
    for (const auto& a : v.tuple.A) A.push_back(a.to_string());
    runs.push_back({{"n", n},
                    {"N", v.N},
                    {"lambda", set_json(v.lambda)},
                    {"budgets", v.budgets},
                    {"A", A},
                    {"tuple_height", height_json(v.tuple.height)},
                    {"verified", v.tuple.verified},
                    {"trivial_below", v.trivial_below},
                    {"rank_queries", v.rank_queries}});
  }
  json j{{"family", m.family}, {"functions", functions_json(m.functions)}, {"q0", to_string(q0)}, {"runs", runs}};
  emit(out, j.dump(2) + "\n");
  return 0;
}

int run_descent(const ProblemManifest& m, const std::string& out) {
  if (m.functions.empty()) throw ContractError("descent: manifest needs 'functions'");
  if (m.points.empty()) throw ContractError("descent: manifest needs 'points'");
  descent::DescentConfig cfg;
  cfg.K = m.K;
  cfg.height_cap = m.height_cap;
  cfg.q0 = m.q0;
  json runs = json::array();
  bool valid = true;
  for (unsigned n = m.n.lo; n <= m.n.hi; ++n) {
    auto skel = descent::build_skeleton(m.functions, n, cfg);
    for (const auto& ps : m.points) {
      auto st = descent::specialize(skel, ps.point(), cfg);
      json stages = json::array();
      for (const auto& s : st.stages)
        stages.push_back({{"N", s.N},
                          {"lambda", set_json(s.lambda)},
                          {"J", set_json(s.J)},
                          {"phi", s.phi},
                          {"t", s.t},
                          {"span_dim", s.span_dim},
                          {"claim_iv_slack", s.claim_iv_slack},
                          {"basis_height_excess", fmt(s.basis_height_excess)}});
      auto violations = st.violations();
      valid = valid && violations.empty();
      json run{{"n", n}, {"point", point_json(ps)}, {"d", st.d}, {"stages", stages}, {"violations", violations}};
      if (m.alpha) {
        try {
          auto rep = descent::certify_solution(m.functions, *m.alpha, n, ps.point(), 0, &skel);
          run["certificate"] = {{"classification", to_string(rep.classification)},
                                {"point_height", height_json(rep.hP)},
                                {"bound", fmt(rep.bound)},
                                {"margin", fmt(rep.margin)}};
          if (rep.inequality)
            run["certificate"]["inequality"] = {{"lambda", to_string(rep.inequality->lambda)},
                                                {"lambda_bound", to_string(rep.inequality->lambda_bound)},
                                                {"holds", rep.inequality->holds}};
        } catch (const ContractError& e) {
          run["certificate"] = {{"error", e.what()}};
        }
      }
      runs.push_back(run);
    }
  }
  json j{{"family", m.family}, {"functions", functions_json(m.functions)}, {"runs", runs}};
  emit(out, j.dump(2) + "\n");
  return valid ? 0 : 1;
}

int run_reduce(const ProblemManifest& m, const std::string& out) {
  if (m.generators.empty()) throw ContractError("reduce: manifest needs 'generators'");
  if (m.lambda.empty()) throw ContractError("reduce: manifest needs 'lambda'");
  reduction::SubgroupPresentation g;
  g.r = m.generators.front().size();
  g.generators = m.generators;
  g.torsion = m.torsion;
  reduction::TorsionVector omega = m.omega.empty() ? reduction::TorsionVector(g.r, Rational(0)) : m.omega;
  std::vector<RationalFunction> theta = m.theta.empty() ? std::vector<RationalFunction>(g.r, RationalFunction(1))
                                                        : m.theta;
  if (theta.size() != g.r) throw ContractError("reduce: 'theta' length differs from the generators");
  auto verdict = reduction::is_constant_free(g, m.box);
  json cf{{"constant_free", verdict.constant_free},
          {"box", verdict.box},
          {"characters_checked", verdict.characters_checked},
          {"describe", verdict.describe()}};
  if (verdict.witness)
    cf["witness"] = {{"e", verdict.witness->e},
                     {"lambda", integers_json(verdict.witness->lambda)},
                     {"constant", to_string(verdict.witness->constant)}};
  auto d = reduction::decompose(g, m.lambda, omega, theta, m.dirichlet_q);
  json dir{{"lambda", integers_json(d.approx.lambda)}, {"A", to_string(d.approx.A)}, {"Q", d.approx.Q},
           {"q", to_string(d.approx.q)},               {"p", integers_json(d.approx.p)}, {"n", to_string(d.approx.n)},
           {"rem", integers_json(d.approx.rem)}};
  auto elem = reduction::element(g, m.lambda);
  auto norm = reduction::normalize_to_first_coordinate(g, elem, theta);
  json normalized{{"generators", json::array()},
                  {"element", functions_json(norm.element)},
                  {"theta", functions_json(norm.theta)}};
  for (const auto& gen : norm.gamma.generators) normalized["generators"].push_back(functions_json(gen));
  json j{{"family", m.family},
         {"constant_free", cf},
         {"dirichlet", dir},
         {"reduced",
          {{"n", d.n()}, {"f", functions_json(d.f)}, {"rho", functions_json(d.rho)},
           {"alpha_functions", functions_json(d.alpha_functions())}}},
         {"normalized", normalized}};
  emit(out, j.dump(2) + "\n");
  return 0;
}

int run_search(const ProblemManifest& m, const std::string& out) {
  if (m.functions.empty()) throw ContractError("search: manifest needs 'functions'");
  std::vector<std::vector<Rational>> alphas;
  if (m.alpha) {
    alphas.push_back(*m.alpha);
  } else if (m.sweep) {
    if (m.r() != 3) throw ContractError("search: an alpha sweep needs r = 3");
    alphas = random_beukers_alphas(m.sweep->count, m.sweep->height, m.sweep->seed);
  } else {
    throw ContractError("search: manifest needs 'alpha'");
  }
  std::string family = m.family.empty() ? "search" : m.family;
  std::vector<ResultRow> rows;
  for (unsigned n = m.n.lo; n <= m.n.hi; ++n) {
    descent::DescentConfig cfg;
    cfg.wronskian_bases = false;
    auto skel = descent::build_skeleton(m.functions, n, cfg);
    for (const auto& a : alphas)
      for (auto& r : solve_and_certify(family, m.functions, a, n, {}, &skel)) {
        bool keep = r.minpoly.is_zero() ||
                    ((!m.degree || r.minpoly.degree() <= *m.degree) &&
                     (!m.H || r.height.lo <= m.H->log_value() + 1e-12));
        if (keep) rows.push_back(std::move(r));
      }
  }
  sort_rows(rows);
  emit(out, to_csv(rows));
  return 0;
}

struct ExampleFlags {
  std::string family;
  std::string n = "";
  std::size_t count = 200;
  long height = 100;
  std::uint64_t seed = 1;
  unsigned box = 3;
  std::string H = "log 10000";
  long t_box = 20, y_box = 50;
  std::string q = "1,3,5", mm = "3,5";
  std::string c = "t;1", u0 = "1;t";
  int degree = 2;
  std::string curve = "t;1-t", V = "x1+x2-1";
};

int run_examples(const ExampleFlags& f, const std::string& out) {
  auto range = [&](const char* dflt) { return parse_range(f.n.empty() ? dflt : f.n); };
  if (f.family == "beukers") {
    auto rep = beukers_suite(random_beukers_alphas(f.count, f.height, f.seed), range("2..12"));
    emit(out, to_csv(rep.rows));
    return suite_status(rep);
  }
  if (f.family == "denz") {
    auto rep = denz_suite(range("1..10"), height_flag(f.H));
    emit(out, to_csv(rep.rows));
    return suite_status(rep);
  }
  if (f.family == "amzex") {
    auto rep = amzex_suite(f.box, height_flag(f.H));
    emit(out, to_csv(rep.rows));
    return suite_status(rep);
  }
  if (f.family == "thue") {
    auto rep = thue_suite(range("1..6"), f.t_box, f.y_box);
    emit(out, rep.text());
    return rep.failures.empty() ? 0 : 1;
  }
  if (f.family == "chebyshev") {
    std::string text;
    bool ok = true;
    for (unsigned q : split_naturals(f.q))
      for (unsigned m : split_naturals(f.mm)) {
        if (q % 2 == 0) throw ContractError("chebyshev: q must be odd");
        bool d = chebyshev_divides(q, m);
        ok = ok && (m % 2 == 0 || d);
        text += "T_" + std::to_string(q) + (d ? " divides " : " does not divide ") + "T_" + std::to_string(m * q) + "\n";
      }
    emit(out, text);
    return ok ? 0 : 1;
  }
  if (f.family == "recurrence") {
    RecurrenceSpec spec{split_list(f.c), split_list(f.u0)};
    emit(out, recurrence_suite(spec, range("2..8"), f.degree).text());
    return 0;
  }
  if (f.family == "unlikely") {
    std::vector<RationalFunction> g;
    std::stringstream in(f.curve);
    std::string item;
    while (std::getline(in, item, ';')) g.push_back(parse_function(item));
    auto V = ff::parse_expr(f.V);
    auto rep = unlikely_scan(g, *V, range("1..8"), height_flag(f.H), f.degree);
    emit(out, rep.to_csv());
    std::cerr << rep.text();
    return 0;
  }
  throw ContractError("examples: unknown family '" + f.family + "'");
}

int run_calibrate(const std::string& lemma, const CalibrationSpec& spec, const std::string& out) {
  const auto& ids = calibration_lemmas();
  if (std::find(ids.begin(), ids.end(), lemma) == ids.end()) throw ContractError("calibrate: unknown lemma " + lemma);
  emit(out, calibrate(lemma, spec).to_csv());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certification harness for power-sum equations over function fields"};
  app.require_subcommand(1);
  std::string out;

  std::string rational, minpoly, function, tuple, machine, point;
  auto* heights = app.add_subcommand("heights", "Weil heights of numbers, tuples and functions");
  heights->add_option("--rational", rational);
  heights->add_option("--minpoly", minpoly);
  heights->add_option("--function", function);
  heights->add_option("--tuple", tuple, "Comma-separated rationals");
  heights->add_option("--machine", machine, "Semicolon-separated functions; needs --point");
  heights->add_option("--point", point);

  std::string manifest;
  auto* siegel = app.add_subcommand("siegel", "Minimal vanishing order and auxiliary tuple");
  auto* descent = app.add_subcommand("descent", "Descent construction and certification at points");
  auto* reduce = app.add_subcommand("reduce", "Constant-freeness and Dirichlet reduction");
  auto* search = app.add_subcommand("search", "Solve and certify the power-sum equation");
  for (auto* sub : {siegel, descent, reduce, search}) sub->add_option("--manifest", manifest)->required();

  ExampleFlags ex;
  auto* examples = app.add_subcommand("examples", "Example families");
  examples->add_option("--family", ex.family, "beukers|denz|amzex|thue|chebyshev|recurrence|unlikely")->required();
  examples->add_option("--n", ex.n, "Range a..b");
  examples->add_option("--count", ex.count, "Number of random alpha (beukers)");
  examples->add_option("--height", ex.height, "Entry bound of alpha (beukers)");
  examples->add_option("--seed", ex.seed);
  examples->add_option("--box", ex.box, "Exponent box (amzex)");
  examples->add_option("--H", ex.H, "Point height bound: a number or \"log B\"");
  examples->add_option("--t-box", ex.t_box);
  examples->add_option("--y-box", ex.y_box);
  examples->add_option("--q", ex.q, "Odd q values (chebyshev)");
  examples->add_option("--m", ex.mm, "m values (chebyshev)");
  examples->add_option("--c", ex.c, "Recurrence coefficients c_1;...;c_r");
  examples->add_option("--u0", ex.u0, "Initial terms u_0;...;u_{r-1}");
  examples->add_option("--degree", ex.degree);
  examples->add_option("--curve", ex.curve, "Curve functions g_1;...;g_r (unlikely)");
  examples->add_option("--V", ex.V, "Polynomial in x1..xr (unlikely)");

  std::string lemma;
  CalibrationSpec cal;
  auto* calib = app.add_subcommand("calibrate", "Fit the constants of the height inequalities");
  calib->add_option("--lemma", lemma)->required();
  calib->add_option("--seed", cal.seed);
  calib->add_option("--samples", cal.samples);
  calib->add_option("--height-bound", cal.height_bound);

  for (auto* sub : {heights, siegel, descent, reduce, search, examples, calib}) sub->add_option("--out", out, "Output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*heights) return run_heights(rational, minpoly, function, tuple, machine, point, out);
    if (*siegel) return run_siegel(load_manifest(manifest), out);
    if (*descent) return run_descent(load_manifest(manifest), out);
    if (*reduce) return run_reduce(load_manifest(manifest), out);
    if (*search) return run_search(load_manifest(manifest), out);
    if (*examples) return run_examples(ex, out);
    if (*calib) return run_calibrate(lemma, cal, out);
  } catch (const ContractError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
