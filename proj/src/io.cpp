#include "trirep/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace trirep {

namespace {

[[noreturn]] void bad_input(const std::string& what) {
  throw Error(ErrorCode::InvalidArgument, what);
}

double parse_real(std::string_view s, std::string_view whole) {
  const std::string buf(s);
  char* end = nullptr;
  const double v = std::strtod(buf.c_str(), &end);
  if (buf.empty() || end != buf.c_str() + buf.size()) {
    bad_input("cannot parse number '" + std::string(whole) + "'");
  }
  return v;
}

template <FieldScalar Scalar>
Json vector_to_json(const Vector<Scalar>& v) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(scalar_to_json(v(i)));
  return arr;
}

template <FieldScalar Scalar>
Scalar scalar_from_json(const Json& j) {
  if constexpr (is_complex_v<Scalar>) {
    return complex_from_json(j);
  } else {
    if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
    if (!j.is_number()) bad_input("expected a real number, got " + j.dump());
    return j.get<double>();
  }
}

template <FieldScalar Scalar>
Vector<Scalar> vector_from_json(const Json& j) {
  if (!j.is_array()) bad_input("expected an array, got " + j.dump());
  Vector<Scalar> v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = scalar_from_json<Scalar>(j[i]);
  return v;
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad_input(std::string("missing key '") + key + "'");
  return j.at(key);
}

}  // namespace

Complex parse_complex(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) bad_input("empty number");
  if (s.back() != 'i' && s.back() != 'j') return {parse_real(s, text), 0.0};

  const std::string body = s.substr(0, s.size() - 1);
  // Split at the last sign that is not part of an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_of = [&](std::string_view part) -> double {
    if (part.empty() || part == "+") return 1.0;
    if (part == "-") return -1.0;
    return parse_real(part, text);
  };
  if (split == std::string::npos) return {0.0, imag_of(body)};
  return {parse_real(std::string_view(body).substr(0, split), text),
          imag_of(std::string_view(body).substr(split))};
}

Json scalar_to_json(double x) {
  if (std::isnan(x)) return nullptr;
  return x;
}

Json scalar_to_json(const Complex& x) { return Json::array({scalar_to_json(x.real()), scalar_to_json(x.imag())}); }

Complex complex_from_json(const Json& j) {
  auto part = [](const Json& e) -> double {
    if (e.is_null()) return std::numeric_limits<double>::quiet_NaN();
    if (!e.is_number()) bad_input("expected a number, got " + e.dump());
    return e.get<double>();
  };
  if (j.is_array()) {
    if (j.size() != 2) bad_input("complex values are [re, im] pairs, got " + j.dump());
    return {part(j[0]), part(j[1])};
  }
  if (j.is_string()) return parse_complex(j.get<std::string>());
  return {part(j), 0.0};
}

template <FieldScalar Scalar>
Json params_to_json(const AlgebraParams<Scalar>& p) {
  Json j;
  j["delta"] = p.delta;
  j["phi0"] = scalar_to_json(p.phi0);
  j["delta0"] = scalar_to_json(p.delta0);
  j["v0"] = scalar_to_json(p.v0);
  j["b0"] = scalar_to_json(p.b0);
  return j;
}

template <FieldScalar Scalar>
AlgebraParams<Scalar> params_from_json(const Json& j) {
  AlgebraParams<Scalar> p;
  p.delta = scalar_from_json<double>(field(j, "delta"));
  p.phi0 = scalar_from_json<Scalar>(field(j, "phi0"));
  p.delta0 = scalar_from_json<Scalar>(field(j, "delta0"));
  p.v0 = scalar_from_json<Scalar>(field(j, "v0"));
  p.b0 = scalar_from_json<Scalar>(field(j, "b0"));
  return p;
}

bool json_is_complex(const Json& j) {
  if (j.contains("field")) return j.at("field") == "complex";
  for (const char* key : {"phi0", "delta0", "v0", "b0"})
    if (j.contains(key) && j.at(key).is_array()) return true;
  return false;
}

template <FieldScalar Scalar>
Json operator_to_json(const TridiagonalOperator<Scalar>& op) {
  Json j;
  j["sub"] = vector_to_json(op.sub);
  j["diag"] = vector_to_json(op.diag);
  j["sup"] = vector_to_json(op.sup);
  return j;
}

template <FieldScalar Scalar>
TridiagonalOperator<Scalar> operator_from_json(const Json& j) {
  return {vector_from_json<Scalar>(field(j, "sub")), vector_from_json<Scalar>(field(j, "diag")),
          vector_from_json<Scalar>(field(j, "sup"))};
}

Json gauge_to_json(const GaugeChoice& g) {
  switch (g.kind) {
    case GaugeChoice::Kind::SplitSqrt: return "split_sqrt";
    case GaugeChoice::Kind::UnitW: return "unit_w";
    case GaugeChoice::Kind::Custom: return Json{{"custom", g.seeds}};
  }
  return nullptr;
}

GaugeChoice gauge_from_json(const Json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "split_sqrt") return GaugeChoice::split_sqrt();
    if (s == "unit_w") return GaugeChoice::unit_w();
    bad_input("unknown gauge '" + s + "'");
  }
  if (j.is_object() && j.contains("custom")) return GaugeChoice::custom(j.at("custom").get<std::vector<double>>());
  bad_input("unknown gauge " + j.dump());
}

template <FieldScalar Scalar>
Json representation_to_json(const Representation<Scalar>& rep) {
  const auto& r = rep.coeffs;
  Json j;
  j["field"] = is_complex_v<Scalar> ? "complex" : "real";
  const Json seeds = params_to_json(r.params);
  for (const auto& [key, value] : seeds.items()) j[key] = value;
  j["gauge"] = gauge_to_json(r.gauge);
  j["size"] = r.dim();
  j["closed"] = r.closed;
  j["a"] = vector_to_json(r.a);
  j["b"] = vector_to_json(r.b);
  j["c"] = vector_to_json(r.c);
  j["u"] = vector_to_json(r.u);
  j["v"] = vector_to_json(r.v);
  j["w"] = vector_to_json(r.w);
  j["kappa"] = vector_to_json(r.kappa);
  j["X"] = operator_to_json(rep.X);
  j["Z"] = operator_to_json(rep.Z);
  return j;
}

namespace {

template <FieldScalar Scalar>
Representation<Scalar> typed_representation(const Json& j) {
  Representation<Scalar> rep;
  auto& r = rep.coeffs;
  r.params = params_from_json<Scalar>(j);
  r.gauge = j.contains("gauge") ? gauge_from_json(j.at("gauge")) : GaugeChoice::split_sqrt();
  r.closed = field(j, "closed").get<bool>();
  r.a = vector_from_json<Scalar>(field(j, "a"));
  r.b = vector_from_json<Scalar>(field(j, "b"));
  r.c = vector_from_json<Scalar>(field(j, "c"));
  r.u = vector_from_json<Scalar>(field(j, "u"));
  r.v = vector_from_json<Scalar>(field(j, "v"));
  r.w = vector_from_json<Scalar>(field(j, "w"));
  r.kappa = vector_from_json<Scalar>(field(j, "kappa"));
  rep.X = operator_from_json<Scalar>(field(j, "X"));
  rep.Z = operator_from_json<Scalar>(field(j, "Z"));
  const auto d = r.b.size();
  for (const auto* s : {&r.a, &r.c, &r.u, &r.v, &r.w, &r.kappa}) {
    if (s->size() != d) throw Error(ErrorCode::DimensionMismatch, "coefficient sequences differ in length");
  }
  if (rep.X.dim() != d || rep.Z.dim() != d) {
    throw Error(ErrorCode::DimensionMismatch, "operators do not match the coefficient length");
  }
  return rep;
}

}  // namespace

AnyRepresentation representation_from_json(const Json& j) {
  if (json_is_complex(j)) return typed_representation<Complex>(j);
  return typed_representation<double>(j);
}

Json spectral_to_json(const SpectralData& s) {
  Json j;
  j["nodes"] = vector_to_json<double>(s.nodes);
  j["weights"] = vector_to_json<double>(s.weights);
  return j;
}

std::string spectral_to_csv(const SpectralData& s) {
  std::string out = "node,weight\n";
  char line[96];
  for (Eigen::Index i = 0; i < s.dim(); ++i) {
    std::snprintf(line, sizeof line, "%.17g,%.17g\n", s.nodes(i), s.weights(i));
    out += line;
  }
  return out;
}

Json family_to_json(const FamilySpec& spec) {
  Json j;
  j["family"] = family_name(spec);
  Json p;
  if (const auto* f = std::get_if<JacobiFamily>(&spec)) {
    p["alpha"] = f->alpha;
    p["beta"] = f->beta;
  } else if (const auto* f = std::get_if<ContinuousHahnFamily>(&spec)) {
    p["a"] = scalar_to_json(f->a);
    p["b"] = scalar_to_json(f->b);
    p["c"] = scalar_to_json(f->c);
    p["d"] = scalar_to_json(f->d);
  } else if (const auto* f = std::get_if<HahnFamily>(&spec)) {
    p["alpha"] = f->alpha;
    p["beta"] = f->beta;
    p["N"] = f->N;
  } else if (const auto* f = std::get_if<ParaKrawtchoukFamily>(&spec)) {
    p["N"] = f->N;
    p["gamma"] = f->gamma;
    p["t"] = f->t;
  }
  j["params"] = p;
  return j;
}

FamilySpec family_from_json(const Json& j) {
  const auto name = field(j, "family").get<std::string>();
  const Json& p = field(j, "params");
  auto real = [&](const char* key) { return scalar_from_json<double>(field(p, key)); };
  auto integer = [&](const char* key) {
    const Json& v = field(p, key);
    if (!v.is_number_integer()) bad_input(std::string("'") + key + "' must be an integer");
    return v.get<int>();
  };
  if (name == "jacobi") return JacobiFamily{real("alpha"), real("beta")};
  if (name == "continuous_hahn") {
    return ContinuousHahnFamily{complex_from_json(field(p, "a")), complex_from_json(field(p, "b")),
                                complex_from_json(field(p, "c")), complex_from_json(field(p, "d"))};
  }
  if (name == "hahn") return HahnFamily{real("alpha"), real("beta"), integer("N")};
  if (name == "para_krawtchouk") {
    ParaKrawtchoukFamily f{integer("N"), real("gamma")};
    if (p.contains("t")) f.t = real("t");
    return f;
  }
  bad_input("unknown family '" + name + "'");
}

Json report_to_json(const FamilyReport& report) {
  auto value = [&](const Complex& z) -> Json {
    return report.complex_valued ? scalar_to_json(z) : scalar_to_json(z.real());
  };
  Json j;
  j["family"] = report.family;
  j["n_max"] = report.n_max;
  j["tol"] = report.tol;
  j["max_rel_err"] = report.max_rel_err;
  j["passed"] = report.passed;
  j["warnings"] = report.warnings;
  Json records = Json::array();
  for (const auto& r : report.records) {
    Json rec;
    rec["n"] = r.n;
    rec["lambda_general"] = value(r.lambda_general);
    rec["lambda_closed"] = value(r.lambda_closed);
    rec["b_general"] = value(r.b_general);
    rec["b_closed"] = value(r.b_closed);
    rec["rel_err"] = r.rel_err;
    records.push_back(rec);
  }
  j["records"] = records;
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

template Json params_to_json(const AlgebraParams<double>&);
template Json params_to_json(const AlgebraParams<Complex>&);
template AlgebraParams<double> params_from_json(const Json&);
template AlgebraParams<Complex> params_from_json(const Json&);
template Json operator_to_json(const TridiagonalOperator<double>&);
template Json operator_to_json(const TridiagonalOperator<Complex>&);
template TridiagonalOperator<double> operator_from_json(const Json&);
template TridiagonalOperator<Complex> operator_from_json(const Json&);
template Json representation_to_json(const Representation<double>&);
template Json representation_to_json(const Representation<Complex>&);

}  // namespace trirep
