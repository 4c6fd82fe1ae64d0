#include "cyclicity/io.hpp"

#include <cmath>
#include <numbers>
#include <regex>

#include "cyclicity/errors.hpp"

namespace cyc::io {

namespace {

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ArgumentError(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  return j.is_object() && j.contains(key) ? j.at(key).get<T>() : fallback;
}

std::optional<int> optional_int(const json& j, const char* key) {
  if (j.is_object() && j.contains(key) && !j.at(key).is_null()) return j.at(key).get<int>();
  return std::nullopt;
}

}  // namespace

Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_object()) return {get_or(j, "re", 0.0), get_or(j, "im", 0.0)};
  if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
  throw ArgumentError("expected a number, [re, im] or {re, im}");
}

json to_json(Complex z) { return json{{"re", z.real() + 0.0}, {"im", z.imag() + 0.0}}; }

SpaceSpec space_from_json(const json& j, int defaultDim) {
  if (j.is_string()) {
    static const std::regex pattern(R"(^([a-z_]+)(?:\((\d+)\))?$)");
    std::smatch m;
    const std::string s = j.get<std::string>();
    if (!std::regex_match(s, m, pattern)) throw ArgumentError("unrecognized space '" + s + "'");
    const int d = m[2].matched ? std::stoi(m[2].str()) : defaultDim;
    return SpaceSpec::preset(parse_preset(m[1].str()), d);
  }
  const std::string kind = require(j, "kind").get<std::string>();
  const int d = get_or(j, "d", defaultDim);
  const auto maxDegree = optional_int(j, "maxDegree");
  if (kind == "preset") return SpaceSpec::preset(parse_preset(require(j, "preset").get<std::string>()), d, maxDegree);
  if (kind == "drury_arveson") return SpaceSpec::drury_arveson(d, maxDegree);
  if (kind == "diagonal_besov") {
    return SpaceSpec::diagonal_besov(d, get_or(j, "N", 0), MomentSequence(require(j, "moments").get<std::vector<double>>()),
                                     maxDegree);
  }
  if (kind == "custom_diagonal") {
    std::map<MultiIndex, double> weights;
    for (const auto& w : require(j, "weights")) {
      weights[MultiIndex(require(w, "exponents").get<std::vector<int>>())] = require(w, "value").get<double>();
    }
    if (!maxDegree) throw ArgumentError("custom_diagonal requires maxDegree");
    return SpaceSpec::custom_diagonal(d, weights, *maxDegree);
  }
  throw ArgumentError("unknown space kind '" + kind + "'");
}

json to_json(const SpaceSpec& spec) {
  json j{{"d", spec.dim()}, {"maxDegree", spec.max_degree()}};
  if (auto p = spec.preset_name()) {
    j["kind"] = "preset";
    j["preset"] = to_string(*p);
    return j;
  }
  switch (spec.law()) {
    case WeightLaw::DiagonalBesov:
      j["kind"] = "diagonal_besov";
      j["N"] = spec.derivative_order();
      j["moments"] = spec.moments().values();
      break;
    case WeightLaw::DruryArveson: j["kind"] = "drury_arveson"; break;
    case WeightLaw::CustomDiagonal: {
      j["kind"] = "custom_diagonal";
      json w = json::array();
      for (const auto& a : spec.monomials()) w.push_back({{"exponents", a.exponents()}, {"value", spec.monomial_norm_sq(a)}});
      j["weights"] = std::move(w);
      break;
    }
  }
  return j;
}

Polynomial polynomial_from_json(const json& j, int d) {
  if (j.is_array()) {
    Polynomial f(d);
    for (const auto& t : j) {
      MultiIndex a(require(t, "exponents").get<std::vector<int>>());
      if (a.dim() != d) throw ArgumentError("term exponents do not match dimension");
      f.add(a, Complex(get_or(t, "re", 0.0), get_or(t, "im", 0.0)));
    }
    return f;
  }
  const std::string family = require(j, "family").get<std::string>();
  const int var = get_or(j, "variable", 1);
  if (var < 1 || var > d) throw ArgumentError("variable index out of range");
  const Polynomial z = Polynomial::variable(d, var - 1);
  if (family == "one_minus_z") return Polynomial::constant(d, 1.0) - z;
  if (family == "shifted") return Polynomial::constant(d, complex_from_json(require(j, "c"))) - z;
  if (family == "constant") return Polynomial::constant(d, complex_from_json(require(j, "value")));
  if (family == "monomial") {
    MultiIndex a(require(j, "exponents").get<std::vector<int>>());
    if (a.dim() != d) throw ArgumentError("monomial exponents do not match dimension");
    return Polynomial::monomial(a, j.contains("coefficient") ? complex_from_json(j.at("coefficient")) : Complex(1.0));
  }
  throw ArgumentError("unknown function family '" + family + "'");
}

json to_json(const Polynomial& f) {
  json arr = json::array();
  for (const auto& [a, c] : f) arr.push_back({{"exponents", a.exponents()}, {"re", c.real() + 0.0}, {"im", c.imag() + 0.0}});
  return arr;
}

FreePolynomial free_polynomial_from_json(const json& j, int d) {
  if (j.is_array()) {
    FreePolynomial f(d);
    for (const auto& t : j) f.add(Word(require(t, "letters").get<std::vector<int>>()), Complex(get_or(t, "re", 0.0), get_or(t, "im", 0.0)));
    return f;
  }
  const std::string family = require(j, "family").get<std::string>();
  if (family == "shifted") {
    const int letter = get_or(j, "letter", 1);
    return FreePolynomial::identity(d, complex_from_json(require(j, "c"))) - FreePolynomial::variable(d, letter);
  }
  if (family == "constant") return FreePolynomial::identity(d, complex_from_json(require(j, "value")));
  throw ArgumentError("unknown free function family '" + family + "'");
}

json to_json(const FreePolynomial& f) {
  json arr = json::array();
  for (const auto& [w, c] : f) arr.push_back({{"letters", w.letters()}, {"re", c.real() + 0.0}, {"im", c.imag() + 0.0}});
  return arr;
}

FreeSpaceSpec free_space_from_json(const json& j, int defaultDim) {
  if (j.is_string()) {
    if (j.get<std::string>() == "free_hardy") return FreeSpaceSpec::free_hardy(defaultDim);
    throw ArgumentError("unrecognized free space '" + j.get<std::string>() + "'");
  }
  const std::string kind = require(j, "kind").get<std::string>();
  const int d = get_or(j, "d", defaultDim);
  const int maxLength = get_or(j, "maxLength", FreeSpaceSpec::kDefaultMaxLength);
  if (kind == "free_hardy") return FreeSpaceSpec::free_hardy(d, maxLength);
  if (kind == "free_besov") return FreeSpaceSpec::free_besov(d, require(j, "s").get<double>(), maxLength);
  if (kind == "custom") return FreeSpaceSpec::custom(d, require(j, "weights").get<std::vector<double>>());
  throw ArgumentError("unknown free space kind '" + kind + "'");
}

json to_json(const FreeSpaceSpec& spec) {
  json j{{"d", spec.dim()}, {"maxLength", spec.max_length()}};
  switch (spec.kind()) {
    case FreeWeightKind::FreeHardy: j["kind"] = "free_hardy"; break;
    case FreeWeightKind::FreeBesov:
      j["kind"] = "free_besov";
      j["s"] = spec.smoothness();
      break;
    case FreeWeightKind::Custom:
      j["kind"] = "custom";
      j["weights"] = spec.length_weights();
      break;
  }
  return j;
}

BoundaryCloud cloud_from_json(const json& j, int d) {
  if (j.is_array()) {
    Eigen::MatrixXd p(2 * d, static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
      const auto x = j[i].get<std::vector<double>>();
      if (x.size() != static_cast<std::size_t>(2 * d)) throw ArgumentError("cloud point has wrong number of coordinates");
      for (int r = 0; r < 2 * d; ++r) p(r, static_cast<Eigen::Index>(i)) = x[static_cast<std::size_t>(r)];
    }
    return BoundaryCloud(d, std::move(p));
  }
  const std::string gen = require(j, "generator").get<std::string>();
  const auto n = require(j, "n").get<Eigen::Index>();
  if (n < 0) throw ArgumentError("cloud size must be >= 0");
  if (gen == "circle") return circle_cloud(n);
  if (gen == "arc") return arc_cloud(n, get_or(j, "angle", std::numbers::pi));
  if (gen == "sphere_patch") return sphere_patch_cloud(n, get_or(j, "capAngle", std::numbers::pi / 3.0));
  throw ArgumentError("unknown cloud generator '" + gen + "'");
}

json to_json(const BoundaryCloud& cloud) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < cloud.size(); ++i) {
    const Eigen::VectorXd x = cloud.point(i);
    arr.push_back(std::vector<double>(x.data(), x.data() + x.size()));
  }
  return arr;
}

RadialRule radial_from_json(const json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "point_mass") return RadialRule::point_mass();
    if (s == "bergman") return RadialRule::bergman();
    throw ArgumentError("unknown radial rule '" + s + "'");
  }
  const std::string kind = require(j, "kind").get<std::string>();
  if (kind == "point_mass") return RadialRule::point_mass();
  if (kind == "bergman") return RadialRule::bergman(get_or(j, "count", 32));
  if (kind == "nodes") {
    return RadialRule(require(j, "nodes").get<std::vector<double>>(), require(j, "weights").get<std::vector<double>>());
  }
  throw ArgumentError("unknown radial rule kind '" + kind + "'");
}

json to_json(const RadialRule& rule) {
  return json{{"kind", "nodes"}, {"nodes", rule.nodes()}, {"weights", rule.weights()}};
}

namespace {

AngularRule angular_from_json(const json& j, int d) {
  const json a = j.is_object() && j.contains("angular") ? j.at("angular") : json::object();
  const int count = get_or(a, "count", 256);
  if (!a.contains("scheme")) {
    if (d >= 2 && !a.contains("seed")) throw ArgumentError("Monte Carlo angular rule requires a seed");
    return AngularRule::for_dim(d, count, get_or(a, "seed", std::uint64_t{0}));
  }
  const std::string scheme = a.at("scheme").get<std::string>();
  if (scheme == "trapezoid") return AngularRule::trapezoid(count);
  if (scheme == "monte_carlo") return AngularRule::monte_carlo(count, require(a, "seed").get<std::uint64_t>());
  throw ArgumentError("unknown angular scheme '" + scheme + "'");
}

json angular_to_json(const AngularRule& a) {
  json j{{"count", a.count}};
  if (a.scheme == AngularScheme::Trapezoid) {
    j["scheme"] = "trapezoid";
  } else {
    j["scheme"] = "monte_carlo";
    j["seed"] = a.seed;
  }
  return j;
}

// Radial rule and derivative order, either from a preset or given explicitly.
void radial_setup(const json& j, int d, RadialRule& radial, int& N) {
  if (j.contains("preset")) {
    const MixedSpec base = mixed_spec_for(parse_preset(j.at("preset").get<std::string>()), d, 2.0, 2.0, 1, 0);
    radial = base.radial;
    N = base.N;
  }
  if (j.contains("radial")) radial = radial_from_json(j.at("radial"));
  if (j.contains("N")) N = j.at("N").get<int>();
}

}  // namespace

MixedSpec mixed_spec_from_json(const json& j) {
  MixedSpec s;
  s.d = get_or(j, "d", 1);
  s.p = get_or(j, "p", 2.0);
  s.q = get_or(j, "q", 2.0);
  radial_setup(j, s.d, s.radial, s.N);
  s.angular = angular_from_json(j, s.d);
  s.includeConstantTerm = get_or(j, "includeConstantTerm", true);
  s.validate();
  return s;
}

json to_json(const MixedSpec& s) {
  return json{{"d", s.d},         {"N", s.N},
              {"p", s.p},         {"q", s.q},
              {"radial", to_json(s.radial)}, {"angular", angular_to_json(s.angular)},
              {"includeConstantTerm", s.includeConstantTerm}};
}

VarExpSpec var_exp_spec_from_json(const json& j) {
  VarExpSpec s;
  s.d = get_or(j, "d", 1);
  radial_setup(j, s.d, s.radial, s.N);
  s.angular = angular_from_json(j, s.d);
  const json& e = require(j, "exponent");
  s.exponent = ExponentFamily{get_or(e, "a", 2.0), get_or(e, "b", 0.0), get_or(e, "c", 1.0)};
  s.includeConstantTerm = get_or(j, "includeConstantTerm", true);
  s.bisectionTol = get_or(j, "bisectionTol", s.bisectionTol);
  s.validate();
  return s;
}

json to_json(const VarExpSpec& s) {
  return json{{"d", s.d},
              {"N", s.N},
              {"exponent", {{"a", s.exponent.a}, {"b", s.exponent.b}, {"c", s.exponent.c}}},
              {"radial", to_json(s.radial)},
              {"angular", angular_to_json(s.angular)},
              {"includeConstantTerm", s.includeConstantTerm},
              {"bisectionTol", s.bisectionTol}};
}

std::string dump_canonical(const json& j) { return j.dump(2) + "\n"; }

}  // namespace cyc::io
