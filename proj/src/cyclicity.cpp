#include "cyclicity/cyclicity.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <random>
#include <thread>

namespace cyc {

std::string to_string(FitModel m) {
  switch (m) {
    case FitModel::None: return "none";
    case FitModel::InverseLog: return "inverse_log";
    case FitModel::InversePoly: return "inverse_poly";
  }
  return "none";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::NumericallyCyclic: return "numerically_cyclic";
    case Verdict::Plateau: return "plateau";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

ApproximantResult subspace_distance(const SpaceSpec& spec, const Polynomial& g, const Polynomial& f, int n) {
  if (f.dim() != spec.dim() || g.dim() != spec.dim()) throw ArgumentError("subspace_distance: dimension mismatch");
  if (f.is_zero()) throw DegenerateInputError("subspace_distance: f = 0");
  if (n < 0) throw ArgumentError("subspace_distance: n must be >= 0");
  const int top = std::max(n + f.degree(), g.degree());
  if (top > spec.max_degree()) {
    throw RangeError("subspace_distance: degree budget " + std::to_string(top) + " exceeds maxDegree " +
                     std::to_string(spec.max_degree()));
  }

  const Eigen::VectorXd sqrtW = spec.weights(top).cwiseSqrt();
  const auto rows = sqrtW.size();
  const auto cols = static_cast<Eigen::Index>(spec.basis_size(n));
  const auto& mons = spec.monomials();

  Eigen::MatrixXcd design = Eigen::MatrixXcd::Zero(rows, cols);
  for (Eigen::Index col = 0; col < cols; ++col) {
    const MultiIndex& b = mons[static_cast<std::size_t>(col)];
    for (const auto& [a, c] : f) {
      const auto row = static_cast<Eigen::Index>(spec.index_of(a + b));
      design(row, col) += c * sqrtW(row);
    }
  }
  const Eigen::VectorXcd target = spec.coefficients(g, top).cwiseProduct(sqrtW);

  const LeastSquaresSolution sol = solve_least_squares(design, target);

  ApproximantResult out;
  out.n = n;
  out.phi = spec.from_coefficients(sol.coefficients);
  out.residual = sol.residual;
  out.gramCondition = sol.gramCondition;
  out.solveMethod = sol.method;
  out.targetNormSq = target.squaredNorm();
  const Complex bx = (design.adjoint() * target).dot(sol.coefficients);  // b^H x
  out.normalEquationResidualSq = std::max(0.0, out.targetNormSq - bx.real());
  return out;
}

ApproximantResult cyclicity_index(const SpaceSpec& spec, const Polynomial& f, int n) {
  return subspace_distance(spec, Polynomial::constant(spec.dim(), 1.0), f, n);
}

namespace {

// Linear least squares r ~ a + b x; returns (a, b, rss).
std::tuple<double, double, double> fit_affine(const std::vector<double>& x, const std::vector<double>& r) {
  const auto m = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd A(m, 2);
  Eigen::VectorXd y(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    A(i, 0) = 1.0;
    A(i, 1) = x[static_cast<std::size_t>(i)];
    y(i) = r[static_cast<std::size_t>(i)];
  }
  const Eigen::Vector2d ab = A.colPivHouseholderQr().solve(y);
  const double rss = (y - A * ab).squaredNorm();
  return {ab(0), ab(1), rss};
}

}  // namespace

std::optional<SweepFit> fit_inverse_log(const std::vector<int>& n, const std::vector<double>& r) {
  if (n.size() < 3 || n.size() != r.size()) return std::nullopt;
  std::vector<double> x(n.size());
  for (std::size_t i = 0; i < n.size(); ++i) x[i] = 1.0 / std::log(n[i] + 2.0);
  auto [a, b, rss] = fit_affine(x, r);
  return SweepFit{FitModel::InverseLog, a, b, 0.0, rss};
}

std::optional<SweepFit> fit_inverse_poly(const std::vector<int>& n, const std::vector<double>& r) {
  if (n.size() < 4 || n.size() != r.size()) return std::nullopt;
  auto evalAt = [&](double c) {
    std::vector<double> x(n.size());
    for (std::size_t i = 0; i < n.size(); ++i) x[i] = std::pow(n[i] + 2.0, -c);
    auto [a, b, rss] = fit_affine(x, r);
    return SweepFit{FitModel::InversePoly, a, b, c, rss};
  };
  // Coarse scan over the exponent, then golden-section refinement.
  constexpr double cMin = 0.05, cMax = 6.0, step = 0.01;
  SweepFit best = evalAt(cMin);
  for (double c = cMin + step; c <= cMax + 1e-12; c += step) {
    SweepFit s = evalAt(c);
    if (s.rss < best.rss) best = s;
  }
  double lo = std::max(cMin, best.c - step), hi = std::min(cMax, best.c + step);
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
  SweepFit f1 = evalAt(x1), f2 = evalAt(x2);
  for (int it = 0; it < 60; ++it) {
    if (f1.rss <= f2.rss) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = evalAt(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = evalAt(x2);
    }
  }
  for (const SweepFit& s : {f1, f2}) {
    if (s.rss < best.rss) best = s;
  }
  return best;
}

SweepReport index_sweep(const SpaceSpec& spec, const Polynomial& f, int nMax, const SweepOptions& options) {
  if (nMax < 0) throw ArgumentError("index_sweep: nMax must be >= 0");
  if (options.plateauWindow < 2) throw ArgumentError("index_sweep: plateau window must be >= 2");
  const auto count = static_cast<std::size_t>(nMax + 1);
  std::vector<ApproximantResult> results(count);
  std::vector<std::exception_ptr> errors(count);

  auto work = [&](std::size_t start, std::size_t stride) {
    for (std::size_t i = start; i < count; i += stride) {
      try {
        results[i] = cyclicity_index(spec, f, static_cast<int>(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const auto threads = static_cast<std::size_t>(std::clamp(options.threads, 1, static_cast<int>(count)));
  if (threads <= 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  SweepReport report;
  report.options = options;
  for (std::size_t i = 0; i < count; ++i) {
    report.degrees.push_back(static_cast<int>(i));
    report.residuals.push_back(results[i].residual);
    report.gramConditions.push_back(results[i].gramCondition);
    report.solveMethods.push_back(results[i].solveMethod);
  }

  const double last = report.residuals.back();
  const auto window = static_cast<std::size_t>(options.plateauWindow);
  bool flat = false;
  if (count >= window) {
    auto first = report.residuals.end() - static_cast<std::ptrdiff_t>(window);
    auto [lo, hi] = std::minmax_element(first, report.residuals.end());
    flat = (*hi - *lo) < options.plateauVariation;
  }
  if (last < options.tol) {
    report.verdict = Verdict::NumericallyCyclic;
  } else if (flat) {
    report.verdict = Verdict::Plateau;
  } else {
    report.verdict = Verdict::Inconclusive;
  }

  // Fits on the last half of the sweep.
  const std::size_t tail = (count + 1) / 2;
  std::vector<int> tn(report.degrees.end() - static_cast<std::ptrdiff_t>(tail), report.degrees.end());
  std::vector<double> tr(report.residuals.end() - static_cast<std::ptrdiff_t>(tail), report.residuals.end());
  report.inverseLogFit = fit_inverse_log(tn, tr);
  report.inversePolyFit = fit_inverse_poly(tn, tr);
  const SweepFit* chosen = nullptr;
  if (report.inverseLogFit) chosen = &*report.inverseLogFit;
  if (report.inversePolyFit && (!chosen || report.inversePolyFit->rss < chosen->rss)) chosen = &*report.inversePolyFit;
  if (chosen) {
    report.fitModel = chosen->model;
    report.fittedLimit = std::max(0.0, chosen->a);
  }
  return report;
}

PerturbationReport check_perturbation_bound(const SpaceSpec& spec, const Polynomial& f, const Polynomial& g, int n) {
  if (f.is_zero() || g.is_zero()) throw DegenerateInputError("check_perturbation_bound: f and g must be nonzero");
  if (n + g.degree() > spec.max_degree()) throw RangeError("check_perturbation_bound: g exceeds degree budget");
  const ApproximantResult opt = cyclicity_index(spec, f, n);
  const auto one = Polynomial::constant(spec.dim(), 1.0);

  PerturbationReport rep;
  rep.n = n;
  rep.epsilon = norm(spec, one - opt.phi * f);
  rep.delta = norm(spec, f - g);
  rep.lhs = norm(spec, one - opt.phi * g);
  const double moved = norm(spec, opt.phi * (f - g));
  rep.realizedRatio = rep.delta > 0.0 ? moved / rep.delta : 0.0;
  rep.bound = rep.epsilon + moved;
  rep.slack = rep.bound - rep.lhs;
  rep.multiplierNorm = multiplier_norm_lower(spec, opt.phi, std::max(0, spec.max_degree() - std::max(opt.phi.degree(), 0)));
  rep.sectionBound = rep.epsilon + rep.multiplierNorm.lowerBound * rep.delta;
  rep.holds = rep.slack >= 0.0;
  return rep;
}

PerturbedSpace perturb_weights(const SpaceSpec& spec, double epsilon, std::uint64_t seed) {
  if (!spec.has_moments()) throw ArgumentError("perturb_weights: spec must be a radially weighted Besov space");
  if (!(epsilon >= 0.0) || epsilon >= 1.0) throw ArgumentError("perturb_weights: epsilon must lie in [0, 1)");
  const auto& m = spec.moments().values();
  std::vector<double> mp(m.size());
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(1.0 - epsilon, 1.0 + epsilon);
  for (std::size_t j = 0; j < m.size(); ++j) {
    const double factor = epsilon > 0.0 ? u(rng) : 1.0;
    mp[j] = m[j] * factor;
    if (j > 0) mp[j] = std::min(mp[j], mp[j - 1]);
  }
  PerturbedSpace out{SpaceSpec::diagonal_besov(spec.dim(), spec.derivative_order(), MomentSequence(mp),
                                               spec.max_degree()),
                     epsilon, 0.0};
  for (std::size_t j = 0; j < m.size(); ++j) {
    out.realizedEpsilon = std::max(out.realizedEpsilon, std::abs(mp[j] / m[j] - 1.0));
  }
  return out;
}

WeightStabilityReport check_weight_stability(const SpaceSpec& spec, const PerturbedSpace& perturbed,
                                             const Polynomial& f, int n) {
  const ApproximantResult base = cyclicity_index(spec, f, n);
  const ApproximantResult moved = cyclicity_index(perturbed.spec, f, n);
  const auto one = Polynomial::constant(spec.dim(), 1.0);

  WeightStabilityReport rep;
  rep.n = n;
  rep.epsilon = perturbed.nominalEpsilon;
  rep.index = base.residual;
  rep.perturbedIndex = moved.residual;
  rep.transferred = norm(perturbed.spec, one - base.phi * f);
  rep.bound = std::sqrt(1.0 + rep.epsilon) * rep.index + 1e-10;
  rep.ratio = rep.index > 0.0 ? rep.perturbedIndex / rep.index : 1.0;
  rep.holds = rep.perturbedIndex <= rep.bound;
  return rep;
}

double check_class_Cn(const SpaceSpec& spec, const Polynomial& phi, int k, int n) {
  if (k < 0) throw ArgumentError("check_class_Cn: k must be >= 0");
  if (phi.is_zero()) throw DegenerateInputError("check_class_Cn: phi = 0");
  if ((k + 1) * phi.degree() + n > spec.max_degree()) throw RangeError("check_class_Cn: degree budget exceeded");
  return subspace_distance(spec, pow(phi, k), pow(phi, k + 1), n).residual;
}

}  // namespace cyc
