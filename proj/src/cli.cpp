#include "cyclicity/cli.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

#include "cyclicity/capacity.hpp"
#include "cyclicity/cyclicity.hpp"
#include "cyclicity/errors.hpp"
#include "cyclicity/freespace.hpp"
#include "cyclicity/mixednorm.hpp"
#include "cyclicity/operators.hpp"

namespace cyc::cli {

namespace {

using io::json;

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ArgumentError(std::string("config: missing field '") + key + "'");
  return j.at(key);
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

std::uint64_t require_seed(const json& config) {
  if (!config.contains("seed")) throw ArgumentError("config: 'seed' is required for this command");
  return config.at("seed").get<std::uint64_t>();
}

json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json vec(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

struct Context {
  explicit Context(const json& c) : config(c) {}
  const json& config;
  json resolved = json::object();
  json result = json::object();
  std::vector<Artifact> extra;
  std::vector<std::string> warnings;
  int threads = 1;
};

SpaceSpec load_space(Context& ctx) {
  const SpaceSpec spec = io::space_from_json(require(ctx.config, "space"), get_or(ctx.config, "d", 1));
  ctx.resolved["space"] = io::to_json(spec);
  return spec;
}

Polynomial load_function(Context& ctx, int d, const char* key = "function") {
  const Polynomial f = io::polynomial_from_json(require(ctx.config, key), d);
  ctx.resolved[key] = io::to_json(f);
  return f;
}

FreePolynomial load_free_function(Context& ctx, int d, const char* key = "function") {
  const FreePolynomial f = io::free_polynomial_from_json(require(ctx.config, key), d);
  ctx.resolved[key] = io::to_json(f);
  return f;
}

int load_int(Context& ctx, const char* key, std::optional<int> fallback = std::nullopt) {
  const int v = fallback && !ctx.config.contains(key) ? *fallback : require(ctx.config, key).get<int>();
  ctx.resolved[key] = v;
  return v;
}

double load_double(Context& ctx, const char* key, std::optional<double> fallback = std::nullopt) {
  const double v = fallback && !ctx.config.contains(key) ? *fallback : require(ctx.config, key).get<double>();
  ctx.resolved[key] = v;
  return v;
}

json approximant_json(const ApproximantResult& r) {
  return json{{"n", r.n},
              {"residual", r.residual},
              {"phi", io::to_json(r.phi)},
              {"gramCondition", number(r.gramCondition)},
              {"solveMethod", to_string(r.solveMethod)}};
}

json fit_json(const std::optional<SweepFit>& fit) {
  if (!fit) return nullptr;
  return json{{"model", to_string(fit->model)}, {"a", fit->a}, {"b", fit->b}, {"c", fit->c}, {"rss", fit->rss}};
}

json sweep_json(const SweepReport& s) {
  std::vector<std::string> methods;
  for (auto m : s.solveMethods) methods.push_back(to_string(m));
  std::vector<json> conds;
  for (double c : s.gramConditions) conds.push_back(number(c));
  return json{{"degrees", s.degrees},
              {"residuals", s.residuals},
              {"gramConditions", conds},
              {"solveMethods", methods},
              {"inverseLogFit", fit_json(s.inverseLogFit)},
              {"inversePolyFit", fit_json(s.inversePolyFit)},
              {"fitModel", to_string(s.fitModel)},
              {"fittedLimit", s.fittedLimit ? json(*s.fittedLimit) : json(nullptr)},
              {"verdict", to_string(s.verdict)}};
}

SweepOptions load_sweep_options(Context& ctx) {
  SweepOptions o;
  o.tol = load_double(ctx, "tol", o.tol);
  o.plateauWindow = load_int(ctx, "plateauWindow", o.plateauWindow);
  o.plateauVariation = load_double(ctx, "plateauVariation", o.plateauVariation);
  o.threads = ctx.threads;
  return o;
}

ZeroSetOptions load_zero_set_options(Context& ctx, int d) {
  ZeroSetOptions o;
  const json z = ctx.config.contains("zeroSet") ? ctx.config.at("zeroSet") : json::object();
  o.resolution = get_or(z, "resolution", o.resolution);
  if (z.contains("tol")) o.tol = z.at("tol").get<double>();
  if (d >= 2) {
    if (!z.contains("seed")) throw ArgumentError("config: 'zeroSet.seed' is required for d >= 2");
    o.seed = z.at("seed").get<std::uint64_t>();
  }
  json r{{"resolution", o.resolution}, {"tol", o.tol.value_or(d == 1 ? 1e-9 : 1e-4)}};
  if (d >= 2) r["seed"] = o.seed;
  ctx.resolved["zeroSet"] = r;
  return o;
}

// Cloud given explicitly or as the boundary zero set of a function.
BoundaryCloud load_cloud(Context& ctx) {
  const int d = load_int(ctx, "d", 1);
  if (ctx.config.contains("cloud")) {
    const BoundaryCloud cloud = io::cloud_from_json(ctx.config.at("cloud"), d);
    ctx.resolved["cloud"] = io::to_json(cloud);
    return cloud;
  }
  const Polynomial f = load_function(ctx, d);
  const BoundaryCloud cloud = sample_zero_set(f, load_zero_set_options(ctx, d));
  ctx.result["cloud"] = io::to_json(cloud);
  return cloud;
}

void cmd_index(Context& ctx) {
  const SpaceSpec spec = load_space(ctx);
  const Polynomial f = load_function(ctx, spec.dim());
  const Polynomial g = ctx.config.contains("target") ? load_function(ctx, spec.dim(), "target")
                                                     : Polynomial::constant(spec.dim(), 1.0);
  ctx.resolved["target"] = io::to_json(g);
  const int n = load_int(ctx, "n");
  ctx.result = approximant_json(subspace_distance(spec, g, f, n));
}

void cmd_sweep(Context& ctx) {
  const SpaceSpec spec = load_space(ctx);
  const Polynomial f = load_function(ctx, spec.dim());
  const int nMax = load_int(ctx, "nMax");
  const SweepReport s = index_sweep(spec, f, nMax, load_sweep_options(ctx));
  ctx.result = sweep_json(s);
  std::ostringstream csv;
  csv << "degree,residual,gramCondition,solveMethod\n";
  for (std::size_t i = 0; i < s.degrees.size(); ++i) {
    csv << s.degrees[i] << ',' << fmt(s.residuals[i]) << ',' << fmt(s.gramConditions[i]) << ','
        << to_string(s.solveMethods[i]) << '\n';
  }
  ctx.extra.push_back({"sweep.csv", csv.str()});
}

void cmd_free_index(Context& ctx) {
  const int d = load_int(ctx, "d", 1);
  const FreePolynomial G = load_free_function(ctx, d);
  const FreePolynomial g = ctx.config.contains("target") ? load_free_function(ctx, d, "target")
                                                         : FreePolynomial::identity(d);
  ctx.resolved["target"] = io::to_json(g);
  const int n = load_int(ctx, "n");
  const FreeSpaceSpec spec = ctx.config.contains("freeSpace")
                                 ? io::free_space_from_json(ctx.config.at("freeSpace"), d)
                                 : FreeSpaceSpec::free_hardy(d, std::max(n + G.max_length(), g.max_length()));
  ctx.resolved["freeSpace"] = io::to_json(spec);
  const FreeApproximantResult r = free_subspace_distance(spec, g, G, n);
  ctx.result = json{{"n", r.n},
                    {"residual", r.residual},
                    {"phi", io::to_json(r.phi)},
                    {"gramCondition", number(r.gramCondition)},
                    {"solveMethod", to_string(r.solveMethod)}};
}

void cmd_compress_check(Context& ctx) {
  const int d = load_int(ctx, "d", 2);
  const FreePolynomial G = load_free_function(ctx, d);
  const int n = load_int(ctx, "n");
  const int budget = load_int(ctx, "maxLength", n + std::max(G.max_length(), 0));
  const CompressionReport r =
      compression_check(FreeSpaceSpec::free_hardy(d, budget), SpaceSpec::drury_arveson(d, budget), G, n);
  ctx.result = json{{"n", r.n},
                    {"freeResidual", r.freeResidual},
                    {"commutativeResidual", r.commutativeResidual},
                    {"slack", r.slack},
                    {"holds", r.holds},
                    {"abelianization", io::to_json(abelianize(G))}};
}

void cmd_corona_check(Context& ctx) {
  const int d = load_int(ctx, "d", 1);
  const FreePolynomial psi = load_free_function(ctx, d);
  const double rho = load_double(ctx, "rho");
  const int samples = load_int(ctx, "samples", 100);
  const int size = load_int(ctx, "size", 8);
  const std::uint64_t seed = require_seed(ctx.config);
  ctx.resolved["seed"] = seed;
  std::vector<int> lengths;
  if (ctx.config.contains("lengths")) {
    lengths = ctx.config.at("lengths").get<std::vector<int>>();
  } else {
    for (int L = 0; L <= 10; ++L) lengths.push_back(L);
  }
  ctx.resolved["lengths"] = lengths;
  const int nIn = load_int(ctx, "nIn", 20);
  const FreeCoronaReport r = free_corona_check(psi, rho, samples, size, seed, lengths, nIn);
  ctx.result = json{{"rho", r.rho},
                    {"samples", r.samples},
                    {"size", r.size},
                    {"minSingularValue", r.minSingularValue},
                    {"lengths", r.lengths},
                    {"sectionNorms", r.sectionNorms},
                    {"envelope", number(r.envelope)},
                    {"stabilized", r.stabilized}};
}

void cmd_capacity(Context& ctx) {
  const BoundaryCloud cloud = load_cloud(ctx);
  const double alpha = load_double(ctx, "alpha", 0.0);
  EquilibriumOptions opts;
  opts.maxIter = load_int(ctx, "maxIter", opts.maxIter);
  opts.tol = load_double(ctx, "tol", opts.tol);
  if (cloud.is_empty()) ctx.warnings.push_back("empty cloud: capacity is 0 by convention");
  const EquilibriumResult r = riesz_equilibrium(cloud, alpha, opts);
  ctx.result["capacity"] = r.capacity;
  ctx.result["energy"] = number(r.energy);
  ctx.result["uniformEnergy"] = number(r.uniformEnergy);
  ctx.result["alpha"] = r.alpha;
  ctx.result["iterations"] = r.iterations;
  ctx.result["kktGap"] = r.kktGap;
  ctx.result["converged"] = r.converged;
  ctx.result["degenerate"] = r.degenerate;
  ctx.result["pointsUsed"] = r.pointsUsed;
  ctx.result["weights"] = vec(r.weights);
  if (ctx.config.contains("epsNbhd")) {
    NeighbourhoodOptions nb;
    nb.samples = load_int(ctx, "samples", nb.samples);
    if (cloud.dim() >= 2) nb.seed = require_seed(ctx.config);
    ctx.resolved["seed"] = nb.seed;
    const double eps = load_double(ctx, "epsNbhd");
    ctx.result["paperCapacity"] = paper_capacity(cloud, alpha > 0.0 ? alpha : 1.0, eps, nb);
  }
}

void cmd_dimension(Context& ctx) {
  const BoundaryCloud cloud = load_cloud(ctx);
  const int jMin = load_int(ctx, "jMin", 2);
  const int jMax = load_int(ctx, "jMax", 8);
  const BoxDimension b = box_dimension(cloud, jMin, jMax);
  ctx.result["dimension"] = b.dimension;
  ctx.result["rSquared"] = b.rSquared;
  ctx.result["scales"] = b.scales;
  ctx.result["counts"] = b.counts;
}

void cmd_perturb(Context& ctx) {
  const SpaceSpec spec = load_space(ctx);
  const Polynomial f = load_function(ctx, spec.dim());
  const int n = load_int(ctx, "n");
  const std::string variant = get_or<std::string>(ctx.config, "variant", "function");
  ctx.resolved["variant"] = variant;
  if (variant == "function") {
    const Polynomial g = load_function(ctx, spec.dim(), "perturbed");
    const PerturbationReport r = check_perturbation_bound(spec, f, g, n);
    ctx.result = json{{"n", r.n},
                      {"epsilon", r.epsilon},
                      {"delta", r.delta},
                      {"lhs", r.lhs},
                      {"realizedRatio", r.realizedRatio},
                      {"bound", r.bound},
                      {"slack", r.slack},
                      {"multiplierNormLower", r.multiplierNorm.lowerBound},
                      {"sectionBound", r.sectionBound},
                      {"holds", r.holds}};
  } else if (variant == "weight") {
    const double eps = load_double(ctx, "epsilon");
    const std::uint64_t seed = require_seed(ctx.config);
    ctx.resolved["seed"] = seed;
    const PerturbedSpace p = perturb_weights(spec, eps, seed);
    const WeightStabilityReport r = check_weight_stability(spec, p, f, n);
    ctx.result = json{{"n", r.n},
                      {"epsilon", r.epsilon},
                      {"realizedEpsilon", p.realizedEpsilon},
                      {"index", r.index},
                      {"perturbedIndex", r.perturbedIndex},
                      {"transferred", r.transferred},
                      {"bound", r.bound},
                      {"ratio", r.ratio},
                      {"holds", r.holds}};
  } else {
    throw ArgumentError("config: variant must be 'function' or 'weight'");
  }
}

void cmd_mixed_norm(Context& ctx) {
  const MixedSpec spec = io::mixed_spec_from_json(require(ctx.config, "spec"));
  ctx.resolved["spec"] = io::to_json(spec);
  const Polynomial f = load_function(ctx, spec.d);
  const MixedNormEstimate e = mixed_norm_estimate(spec, f);
  ctx.result = json{{"norm", e.value}, {"standardError", e.standardError}};
}

void cmd_varexp_norm(Context& ctx) {
  const VarExpSpec spec = io::var_exp_spec_from_json(require(ctx.config, "spec"));
  ctx.resolved["spec"] = io::to_json(spec);
  const Polynomial f = load_function(ctx, spec.d);
  const double lambda = luxemburg_norm(spec, f);
  ctx.result = json{{"norm", lambda}, {"modularAtNorm", lambda > 0.0 ? json(modular(spec, f, lambda)) : json(nullptr)}};
}

void cmd_mixed_index(Context& ctx) {
  const json& raw = require(ctx.config, "spec");
  const int nMax = load_int(ctx, "nMax");
  if (nMax < 0) throw ArgumentError("config: nMax must be >= 0");
  std::function<MixedIndexResult(int)> solve;
  int d = 1;
  std::optional<MixedSpec> mixed;
  std::optional<VarExpSpec> varexp;
  if (raw.contains("exponent")) {
    varexp = io::var_exp_spec_from_json(raw);
    ctx.resolved["spec"] = io::to_json(*varexp);
    d = varexp->d;
  } else {
    mixed = io::mixed_spec_from_json(raw);
    ctx.resolved["spec"] = io::to_json(*mixed);
    d = mixed->d;
  }
  const Polynomial f = load_function(ctx, d);
  json rows = json::array();
  std::ostringstream csv;
  csv << "n,objective,iterations,converged\n";
  for (int n = 0; n <= nMax; ++n) {
    const MixedIndexResult r = mixed ? mixed_index(*mixed, f, n) : mixed_index(*varexp, f, n);
    rows.push_back(json{{"n", r.n},
                        {"objective", r.objective},
                        {"iterations", r.iterations},
                        {"converged", r.converged},
                        {"phi", io::to_json(r.phi)}});
    csv << r.n << ',' << fmt(r.objective) << ',' << r.iterations << ',' << (r.converged ? "true" : "false") << '\n';
    if (!r.converged) ctx.warnings.push_back("IRLS did not converge at n = " + std::to_string(n));
  }
  ctx.result["runs"] = std::move(rows);
  ctx.extra.push_back({"mixed-index.csv", csv.str()});
}

void cmd_report(Context& ctx) {
  const SpaceSpec spec = load_space(ctx);
  const Polynomial f = load_function(ctx, spec.dim());
  const int nMax = load_int(ctx, "nMax");
  const double alpha = load_double(ctx, "alpha", 0.0);
  ObstructionOptions o;
  o.sweep = load_sweep_options(ctx);
  o.capacityThreshold = load_double(ctx, "capacityThreshold", o.capacityThreshold);
  o.epsNbhd = load_double(ctx, "epsNbhd", o.epsNbhd);
  o.jMin = load_int(ctx, "jMin", o.jMin);
  o.jMax = load_int(ctx, "jMax", o.jMax);
  o.zeroSet = load_zero_set_options(ctx, spec.dim());
  const ObstructionReport r = obstruction_report(spec, f, nMax, alpha, o);
  json box = nullptr;
  if (r.boxDimension) box = json{{"dimension", r.boxDimension->dimension}, {"rSquared", r.boxDimension->rSquared}};
  std::vector<json> point;
  for (Eigen::Index i = 0; i < r.interior.point.size(); ++i) point.push_back(io::to_json(r.interior.point(i)));
  ctx.result = json{{"sweep", sweep_json(r.sweep)},
                    {"cloudSize", r.cloudSize},
                    {"rieszCapacity", r.equilibrium.capacity},
                    {"rieszDegenerate", r.equilibrium.degenerate},
                    {"paperCapacity", r.paperCapacity},
                    {"boxDimension", box},
                    {"interiorZero", {{"found", r.interior.found}, {"point", point}, {"minModulus", r.interior.minModulus}}},
                    {"sweepDecreasing", r.sweepDecreasing},
                    {"verdict", to_string(r.verdict)},
                    {"heuristic", true}};
}

const std::map<std::string, std::function<void(Context&)>>& table() {
  static const std::map<std::string, std::function<void(Context&)>> t{
      {"index", cmd_index},
      {"sweep", cmd_sweep},
      {"free-index", cmd_free_index},
      {"compress-check", cmd_compress_check},
      {"corona-check", cmd_corona_check},
      {"capacity", cmd_capacity},
      {"dimension", cmd_dimension},
      {"perturb", cmd_perturb},
      {"mixed-norm", cmd_mixed_norm},
      {"varexp-norm", cmd_varexp_norm},
      {"mixed-index", cmd_mixed_index},
      {"report", cmd_report},
  };
  return t;
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, fn] : table()) v.push_back(k);
    return v;
  }();
  return names;
}

RunResult run(const std::string& command, const io::json& config, int threads) {
  const auto it = table().find(command);
  if (it == table().end()) throw ArgumentError("unknown command '" + command + "'");
  if (!config.is_object()) throw ArgumentError("config must be a JSON object");
  Context ctx(config);
  ctx.threads = std::max(threads, 1);
  try {
    it->second(ctx);
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("config: ") + e.what());
  }
  RunResult out;
  out.document = json{{"schemaVersion", kSchemaVersion},
                      {"command", command},
                      {"config", ctx.resolved},
                      {"result", ctx.result},
                      {"warnings", ctx.warnings}};
  out.extra = std::move(ctx.extra);
  out.warnings = std::move(ctx.warnings);
  return out;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ValidationError*>(&e) || dynamic_cast<const nlohmann::json::exception*>(&e)) return 2;
  if (dynamic_cast<const NumericError*>(&e)) return 3;
  return 1;
}

}  // namespace cyc::cli
