#include "thue/harness/manifest.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include "json.hpp"

namespace thue::harness {

using nlohmann::json;

namespace {

class FieldError : public ContractError {
 public:
  FieldError(const std::string& field, const std::string& what)
      : ContractError("field '" + field + "': " + what) {}
};

std::string text_of(const json& j, const std::string& field) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw FieldError(field, "expected a string or an integer");
}

template <class F>
auto guarded(const std::string& field, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const FieldError&) {
    throw;
  } catch (const ContractError& e) {
    throw FieldError(field, e.what());
  }
}

Rational rational_of(const json& j, const std::string& field) {
  return guarded(field, [&] { return parse_rational(text_of(j, field)); });
}

long integer_of(const json& j, const std::string& field) {
  if (!j.is_number_integer()) throw FieldError(field, "expected an integer");
  return j.get<long>();
}

const json& array_of(const json& j, const std::string& field) {
  if (!j.is_array()) throw FieldError(field, "expected an array");
  return j;
}

std::string at(const std::string& field, std::size_t i) { return field + "[" + std::to_string(i) + "]"; }

std::vector<RationalFunction> functions_of(const json& j, const std::string& field, const std::string& coord) {
  std::vector<RationalFunction> out;
  const auto& a = array_of(j, field);
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto f = at(field, i);
    out.push_back(guarded(f, [&] { return parse_function(text_of(a[i], f), coord); }));
  }
  return out;
}

std::vector<Rational> rationals_of(const json& j, const std::string& field) {
  std::vector<Rational> out;
  const auto& a = array_of(j, field);
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(rational_of(a[i], at(field, i)));
  return out;
}

HeightBound height_of(const json& j) {
  // A number is a log bound; "log B" is exact.
  if (j.is_number()) {
    double h = j.get<double>();
    if (!(h > 0)) throw FieldError("H", "must be positive");
    return HeightBound::from_log(h);
  }
  if (j.is_string()) {
    auto s = j.get<std::string>();
    if (s.rfind("log ", 0) == 0) {
      long B = guarded("H", [&] { return parse_rational(s.substr(4)); }).get_num().get_si();
      if (B < 2) throw FieldError("H", "must be positive");
      return HeightBound::log_of(B);
    }
  }
  throw FieldError("H", "expected a positive number or \"log B\"");
}

Range range_of(const json& j) {
  if (j.is_number_integer()) {
    long v = j.get<long>();
    if (v < 1) throw FieldError("n", "must be at least 1");
    return {static_cast<unsigned>(v), static_cast<unsigned>(v)};
  }
  if (j.is_string()) return guarded("n", [&] { return parse_range(j.get<std::string>()); });
  throw FieldError("n", "expected an integer or \"a..b\"");
}

PointSpec point_of(const json& j, const std::string& field, const std::string& coord) {
  PointSpec p;
  if (j.is_object()) {
    if (!j.contains("minpoly")) throw FieldError(field, "missing 'minpoly'");
    auto f = guarded(field + ".minpoly", [&] { return parse_function(text_of(j["minpoly"], field), coord); });
    if (f.den().degree() != 0 || f.num().degree() < 1) throw FieldError(field + ".minpoly", "expected a polynomial");
    p.minpoly = primitive_part(f.num());
    if (j.contains("root")) p.root = static_cast<int>(integer_of(j["root"], field + ".root"));
    if (p.root < 0 || p.root >= p.minpoly.degree()) throw FieldError(field + ".root", "root index out of range");
    return p;
  }
  Rational q = rational_of(j, field);
  p.minpoly = QPoly{-q, Rational(1)};
  return p;
}

}  // namespace

AlgebraicNumber PointSpec::point() const {
  if (minpoly.degree() == 1) return AlgebraicNumber::rational(-minpoly.coeff(0) / minpoly.coeff(1));
  return AlgebraicNumber::root_of(minpoly, root);
}

RationalFunction parse_function(const std::string& text, const std::string& coordinate) {
  auto e = ff::parse_expr(text);
  std::function<RationalFunction(const std::string&)> var = [&](const std::string& name) {
    if (name != coordinate) throw ContractError("unknown variable '" + name + "' (coordinate is '" + coordinate + "')");
    return RationalFunction::t();
  };
  return ff::evaluate<RationalFunction>(*e, var);
}

void ProblemManifest::validate() const {
  if (schema != 1) throw FieldError("schema", "unsupported schema " + std::to_string(schema));
  if (!functions.empty() && functions.size() < 2) throw FieldError("functions", "need r >= 2");
  if (alpha && alpha->size() != functions.size()) throw FieldError("alpha", "length differs from 'functions'");
  if (!theta.empty() && !functions.empty() && theta.size() != functions.size())
    throw FieldError("theta", "length differs from 'functions'");
  if (degree && *degree != 1 && *degree != 2) throw FieldError("degree", "must be 1 or 2");
  if (H && H->B < 2) throw FieldError("H", "must be positive");
  if (!generators.empty()) {
    std::size_t rr = generators.front().size();
    for (std::size_t j = 0; j < generators.size(); ++j)
      if (generators[j].size() != rr) throw FieldError(at("generators", j), "length differs from generators[0]");
    if (!lambda.empty() && lambda.size() != generators.size())
      throw FieldError("lambda", "length differs from 'generators'");
    if (!omega.empty() && omega.size() != rr) throw FieldError("omega", "length differs from the generators");
    for (std::size_t j = 0; j < torsion.size(); ++j)
      if (torsion[j].size() != rr) throw FieldError(at("torsion", j), "length differs from the generators");
  }
  if (K < 1) throw FieldError("flags.K", "must be positive");
  if (dirichlet_q < 2) throw FieldError("flags.dirichlet_q", "must be at least 2");
  if (box < 1) throw FieldError("flags.box", "must be positive");
}

ProblemManifest parse_manifest(const std::string& text, const std::string& source) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ContractError(source + ": line " + std::to_string(line) + ", column " + std::to_string(col) +
                        ": malformed JSON");
  }
  try {
    if (!j.is_object()) throw FieldError("(root)", "expected an object");
    static const std::vector<std::string> known{"schema", "family", "coordinate", "functions", "alpha", "theta",
                                                "n", "H", "degree", "q0", "points", "generators", "torsion",
                                                "lambda", "omega", "flags"};
    for (const auto& [key, value] : j.items())
      if (std::find(known.begin(), known.end(), key) == known.end()) throw FieldError(key, "unknown field");
    ProblemManifest m;
    if (!j.contains("schema")) throw FieldError("schema", "missing");
    m.schema = static_cast<int>(integer_of(j["schema"], "schema"));
    if (j.contains("family")) m.family = text_of(j["family"], "family");
    if (j.contains("coordinate")) m.coordinate = text_of(j["coordinate"], "coordinate");
    if (j.contains("functions")) m.functions = functions_of(j["functions"], "functions", m.coordinate);
    if (j.contains("alpha")) {
      const auto& a = j["alpha"];
      if (a.is_object()) {
        AlphaSweep s;
        if (!a.contains("sweep")) throw FieldError("alpha", "expected a list or {\"sweep\": ...}");
        const auto& sw = a["sweep"];
        if (sw.contains("count")) s.count = integer_of(sw["count"], "alpha.sweep.count");
        if (sw.contains("height")) s.height = integer_of(sw["height"], "alpha.sweep.height");
        if (sw.contains("seed")) s.seed = integer_of(sw["seed"], "alpha.sweep.seed");
        if (s.height < 1) throw FieldError("alpha.sweep.height", "must be positive");
        m.sweep = s;
      } else {
        m.alpha = rationals_of(a, "alpha");
      }
    }
    if (j.contains("theta")) m.theta = functions_of(j["theta"], "theta", m.coordinate);
    if (j.contains("n")) m.n = range_of(j["n"]);
    if (j.contains("H")) m.H = height_of(j["H"]);
    if (j.contains("degree")) m.degree = static_cast<int>(integer_of(j["degree"], "degree"));
    if (j.contains("q0")) m.q0 = rational_of(j["q0"], "q0");
    if (j.contains("points")) {
      const auto& ps = array_of(j["points"], "points");
      for (std::size_t i = 0; i < ps.size(); ++i) m.points.push_back(point_of(ps[i], at("points", i), m.coordinate));
    }
    if (j.contains("generators")) {
      const auto& gs = array_of(j["generators"], "generators");
      for (std::size_t i = 0; i < gs.size(); ++i)
        m.generators.push_back(functions_of(gs[i], at("generators", i), m.coordinate));
    }
    if (j.contains("torsion")) {
      const auto& ts = array_of(j["torsion"], "torsion");
      for (std::size_t i = 0; i < ts.size(); ++i) m.torsion.push_back(rationals_of(ts[i], at("torsion", i)));
    }
    if (j.contains("lambda")) {
      const auto& ls = array_of(j["lambda"], "lambda");
      for (std::size_t i = 0; i < ls.size(); ++i)
        m.lambda.push_back(guarded(at("lambda", i), [&] {
          Rational q = parse_rational(text_of(ls[i], at("lambda", i)));
          if (q.get_den() != 1) throw ContractError("expected an integer");
          return Integer(q.get_num());
        }));
    }
    if (j.contains("omega")) m.omega = rationals_of(j["omega"], "omega");
    if (j.contains("flags")) {
      const auto& f = j["flags"];
      if (!f.is_object()) throw FieldError("flags", "expected an object");
      for (const auto& [key, value] : f.items()) {
        std::string field = "flags." + key;
        if (key == "height_cap") {
          if (!value.is_boolean()) throw FieldError(field, "expected true or false");
          m.height_cap = value.get<bool>();
        } else if (key == "K") {
          m.K = integer_of(value, field);
        } else if (key == "dirichlet_q") {
          m.dirichlet_q = integer_of(value, field);
        } else if (key == "box") {
          m.box = integer_of(value, field);
        } else {
          throw FieldError(field, "unknown flag");
        }
      }
    }
    m.validate();
    return m;
  } catch (const ContractError& e) {
    throw ContractError(source + ": " + e.what());
  }
}

ProblemManifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ContractError("cannot read manifest " + path);
  std::stringstream s;
  s << in.rdbuf();
  return parse_manifest(s.str(), path);
}

}  // namespace thue::harness
