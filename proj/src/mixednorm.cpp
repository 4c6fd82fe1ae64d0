#include "cyclicity/mixednorm.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "cyclicity/errors.hpp"
#include "cyclicity/least_squares.hpp"

namespace cyc {

namespace {

constexpr double kPi = std::numbers::pi;

// Column j holds the values of monomial mons[j] at every point.
Eigen::MatrixXcd monomial_table(const Eigen::MatrixXcd& points, const std::vector<MultiIndex>& mons) {
  const Eigen::Index P = points.cols();
  const int d = static_cast<int>(points.rows());
  int top = 0;
  for (const auto& a : mons) top = std::max(top, a.degree());
  Eigen::MatrixXcd out(P, static_cast<Eigen::Index>(mons.size()));
  Eigen::MatrixXcd powers(d, top + 1);
  for (Eigen::Index i = 0; i < P; ++i) {
    for (int j = 0; j < d; ++j) {
      powers(j, 0) = 1.0;
      for (int k = 1; k <= top; ++k) powers(j, k) = powers(j, k - 1) * points(j, i);
    }
    for (std::size_t m = 0; m < mons.size(); ++m) {
      Complex v = 1.0;
      for (int j = 0; j < d; ++j) v *= powers(j, mons[m][j]);
      out(i, static_cast<Eigen::Index>(m)) = v;
    }
  }
  return out;
}

Eigen::VectorXcd polynomial_values(const Eigen::MatrixXcd& points, const Polynomial& g) {
  std::vector<MultiIndex> mons;
  Eigen::VectorXcd c(static_cast<Eigen::Index>(g.size()));
  for (const auto& [a, v] : g) {
    c(static_cast<Eigen::Index>(mons.size())) = v;
    mons.push_back(a);
  }
  if (mons.empty()) return Eigen::VectorXcd::Zero(points.cols());
  return monomial_table(points, mons) * c;
}

Eigen::VectorXd sphere_directions_mc(int d, int count, std::uint64_t seed, Eigen::MatrixXcd& dirs) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  dirs.resize(d, count);
  for (int k = 0; k < count; ++k) {
    for (int j = 0; j < d; ++j) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      dirs(j, k) = Complex(re, im);
    }
    dirs.col(k) /= dirs.col(k).norm();
  }
  return Eigen::VectorXd::Constant(count, 1.0 / count);
}

// Sum_i mu_i (Sum_k sigma_k |v_ik|^p)^{q/p}, restricted to directions k with mask(k).
double mixed_sum(const QuadratureGrid& grid, const Eigen::VectorXcd& v, double p, double q,
                 const std::vector<char>* mask = nullptr) {
  const Eigen::Index M = grid.angular_count();
  double total = 0.0;
  for (std::size_t i = 0; i < grid.radii.size(); ++i) {
    double s = 0.0, wsum = 0.0;
    for (Eigen::Index k = 0; k < M; ++k) {
      if (mask && !(*mask)[static_cast<std::size_t>(k)]) continue;
      s += grid.angularWeights(k) * std::pow(std::abs(v(static_cast<Eigen::Index>(i) * M + k)), p);
      wsum += grid.angularWeights(k);
    }
    if (mask) s /= wsum;
    total += grid.radialWeights[i] * std::pow(s, q / p);
  }
  return total;
}

bool has_constant_row(int N, bool include) { return N > 0 && include; }

struct VarExpSamples {
  Eigen::VectorXd weights;    // per grid point
  Eigen::VectorXd exponents;  // per grid point
  double constWeight = 0.0;
  double constExponent = 2.0;
};

VarExpSamples var_exp_samples(const VarExpSpec& spec, const QuadratureGrid& grid) {
  const Eigen::Index M = grid.angular_count();
  const auto P = static_cast<Eigen::Index>(grid.radii.size()) * M;
  VarExpSamples s;
  s.weights.resize(P);
  s.exponents.resize(P);
  for (std::size_t i = 0; i < grid.radii.size(); ++i) {
    const double pr = spec.exponent(grid.radii[i]);
    for (Eigen::Index k = 0; k < M; ++k) {
      const Eigen::Index j = static_cast<Eigen::Index>(i) * M + k;
      s.weights(j) = grid.radialWeights[i] * grid.angularWeights(k);
      s.exponents(j) = pr;
    }
  }
  if (has_constant_row(spec.N, spec.includeConstantTerm)) s.constWeight = spec.radial.mass();
  s.constExponent = spec.exponent(0.0);
  return s;
}

double modular_of(const VarExpSamples& s, const Eigen::VectorXcd& v, Complex v0, double lambda) {
  double total = 0.0;
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    const double a = std::abs(v(j));
    if (a > 0.0) total += s.weights(j) * std::pow(a / lambda, s.exponents(j));
  }
  if (s.constWeight > 0.0 && std::abs(v0) > 0.0) total += s.constWeight * std::pow(std::abs(v0) / lambda, s.constExponent);
  return total;
}

double luxemburg_of(const VarExpSamples& s, const Eigen::VectorXcd& v, Complex v0, double tol) {
  const bool allZero = v.cwiseAbs().maxCoeff() == 0.0 && (s.constWeight == 0.0 || std::abs(v0) == 0.0);
  if (v.size() == 0 || allZero) return 0.0;
  auto rho = [&](double lambda) { return modular_of(s, v, v0, lambda); };
  double hi = 1.0;
  for (int guard = 0; rho(hi) > 1.0; ++guard) {
    if (guard > 2000) throw ConvergenceError("luxemburg_norm: bracket expansion failed");
    hi *= 2.0;
  }
  double lo = hi / 2.0;
  for (int guard = 0; rho(lo) <= 1.0; ++guard) {
    if (guard > 2000) throw ConvergenceError("luxemburg_norm: bracket expansion failed");
    hi = lo;
    lo /= 2.0;
  }
  int it = 0;
  while (hi - lo > tol * hi) {
    if (++it > 200) throw ConvergenceError("luxemburg_norm: bisection did not converge");
    const double mid = 0.5 * (lo + hi);
    if (rho(mid) > 1.0) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

void validate_grid_inputs(int d, int N, const RadialRule& radial, const AngularRule& angular) {
  if (d < 1) throw ArgumentError("dimension must be >= 1");
  if (N < 0) throw ArgumentError("derivative order must be >= 0");
  if (radial.size() == 0) throw ArgumentError("radial rule is empty");
  if (angular.count < 1) throw ArgumentError("angular count must be >= 1");
  if (angular.scheme == AngularScheme::Trapezoid && d != 1) {
    throw ArgumentError("trapezoid angular rule requires d = 1");
  }
}

// Design columns R^N(z^beta f) on the grid and the matching constant row.
struct IndexProblem {
  Eigen::MatrixXcd A;
  Eigen::VectorXcd t;
  Eigen::RowVectorXcd constRow;
  std::vector<MultiIndex> basis;
};

IndexProblem index_problem(const QuadratureGrid& grid, const Polynomial& f, int N, int n) {
  if (f.is_zero()) throw DegenerateInputError("mixed_index: f = 0");
  if (n < 0) throw ArgumentError("mixed_index: n must be >= 0");
  if (f.dim() != grid.d) throw ArgumentError("mixed_index: dimension mismatch");
  IndexProblem prob;
  prob.basis = graded_monomials(grid.d, n);
  const auto m = static_cast<Eigen::Index>(prob.basis.size());
  prob.A.resize(grid.points.cols(), m);
  prob.constRow.resize(m);
  const Complex f0 = f.constant_term();
  for (Eigen::Index j = 0; j < m; ++j) {
    const Polynomial col = radial_derivative(Polynomial::monomial(prob.basis[static_cast<std::size_t>(j)]) * f, N);
    prob.A.col(j) = polynomial_values(grid.points, col);
    prob.constRow(j) = prob.basis[static_cast<std::size_t>(j)].degree() == 0 ? f0 : Complex(0.0);
  }
  prob.t = Eigen::VectorXcd::Constant(grid.points.cols(), N == 0 ? 1.0 : 0.0);
  return prob;
}

Polynomial phi_from(const std::vector<MultiIndex>& basis, const Eigen::VectorXcd& x, int d) {
  Polynomial phi(d);
  for (std::size_t j = 0; j < basis.size(); ++j) phi.set(basis[j], x(static_cast<Eigen::Index>(j)));
  return phi;
}

// Weighted least squares with row weights u on the grid rows and u0 on the constant row.
Eigen::VectorXcd weighted_solve(const IndexProblem& prob, const Eigen::VectorXd& u, double u0, bool constRow) {
  const Eigen::Index P = prob.A.rows();
  const Eigen::Index rows = P + (constRow ? 1 : 0);
  Eigen::MatrixXcd B(rows, prob.A.cols());
  Eigen::VectorXcd y(rows);
  const Eigen::VectorXd s = u.cwiseSqrt();
  B.topRows(P) = s.asDiagonal() * prob.A;
  y.head(P) = s.cast<Complex>().cwiseProduct(prob.t);
  if (constRow) {
    const double s0 = std::sqrt(u0);
    B.row(P) = s0 * prob.constRow;
    y(P) = s0;
  }
  return solve_least_squares(B, y).coefficients;
}

// Damped IRLS driver. weightsAt returns the row weights at the current residual.
template <typename Objective, typename Weights>
MixedIndexResult run_irls(const IndexProblem& prob, int d, int n, bool constRow, const Eigen::VectorXd& baseWeights,
                          double baseConst, const IrlsOptions& options, Objective objective, Weights weightsAt) {
  Eigen::VectorXcd x = weighted_solve(prob, baseWeights, baseConst, constRow);
  auto residuals = [&](const Eigen::VectorXcd& c, Eigen::VectorXcd& e, Complex& e0) {
    e = prob.t - prob.A * c;
    e0 = Complex(1.0) - (prob.constRow * c).value();
  };
  Eigen::VectorXcd e;
  Complex e0;
  residuals(x, e, e0);
  double J = objective(e, e0);

  MixedIndexResult res;
  res.n = n;
  int it = 0;
  bool converged = false;
  for (; it < options.maxIter; ++it) {
    Eigen::VectorXd u;
    double u0 = 0.0;
    weightsAt(e, e0, J, u, u0);
    const Eigen::VectorXcd cand = weighted_solve(prob, u, u0, constRow);
    double step = 1.0, bestJ = J;
    Eigen::VectorXcd bestX = x;
    for (int ls = 0; ls < 40; ++ls, step *= 0.5) {
      const Eigen::VectorXcd trial = x + step * (cand - x);
      Eigen::VectorXcd te;
      Complex te0;
      residuals(trial, te, te0);
      const double tJ = objective(te, te0);
      if (tJ < J) {
        bestJ = tJ;
        bestX = trial;
        break;
      }
    }
    const double decrease = J - bestJ;
    if (decrease > 0.0) {
      x = bestX;
      J = bestJ;
      residuals(x, e, e0);
    }
    if (decrease < options.tol) {
      converged = true;
      ++it;
      break;
    }
  }
  res.objective = J;
  res.phi = phi_from(prob.basis, x, d);
  res.iterations = it;
  res.converged = converged;
  return res;
}

}  // namespace

GaussRule gauss_legendre(int count) {
  if (count < 1) throw ArgumentError("gauss_legendre: count must be >= 1");
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(count, count);
  for (int k = 1; k < count; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    J(k, k - 1) = J(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  GaussRule rule;
  rule.nodes = es.eigenvalues();
  rule.weights = 2.0 * es.eigenvectors().row(0).transpose().array().square();
  return rule;
}

RadialRule::RadialRule(std::vector<double> nodes, std::vector<double> weights)
    : nodes_(std::move(nodes)), weights_(std::move(weights)) {
  if (nodes_.size() != weights_.size() || nodes_.empty()) throw ArgumentError("RadialRule: size mismatch or empty");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!(nodes_[i] > 0.0 && nodes_[i] <= 1.0)) throw RangeError("RadialRule: nodes must lie in (0, 1]");
    if (!(weights_[i] > 0.0) || !std::isfinite(weights_[i])) throw RangeError("RadialRule: weights must be positive");
  }
}

RadialRule RadialRule::point_mass() { return RadialRule({1.0}, {1.0}); }

RadialRule RadialRule::bergman(int count) {
  const GaussRule g = gauss_legendre(count);
  std::vector<double> r(static_cast<std::size_t>(count)), w(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    r[static_cast<std::size_t>(i)] = 0.5 * (g.nodes(i) + 1.0);
    w[static_cast<std::size_t>(i)] = g.weights(i) * r[static_cast<std::size_t>(i)];
  }
  return RadialRule(std::move(r), std::move(w));
}

double RadialRule::mass() const {
  double m = 0.0;
  for (double w : weights_) m += w;
  return m;
}

AngularRule AngularRule::for_dim(int d, int count, std::uint64_t seed) {
  return d == 1 ? trapezoid(count) : monte_carlo(count, seed);
}

void MixedSpec::validate() const {
  validate_grid_inputs(d, N, radial, angular);
  if (!(p >= 1.0) || !(q >= 1.0) || !std::isfinite(p) || !std::isfinite(q)) {
    throw RangeError("MixedSpec: p and q must be finite and >= 1");
  }
}

MixedSpec mixed_spec_for(Preset preset, int d, double p, double q, int angularCount, std::uint64_t seed) {
  MixedSpec s;
  s.d = d;
  s.p = p;
  s.q = q;
  s.angular = AngularRule::for_dim(d, angularCount, seed);
  switch (preset) {
    case Preset::Hardy: s.radial = RadialRule::point_mass(); break;
    case Preset::Bergman: s.radial = RadialRule::bergman(); break;
    case Preset::DirichletType:
      s.radial = RadialRule::bergman();
      s.N = 1;
      break;
    case Preset::DruryArveson: throw ArgumentError("mixed_spec_for: drury_arveson has no radial measure");
  }
  s.validate();
  return s;
}

double ExponentFamily::operator()(double r) const { return b == 0.0 ? a : a + b * std::pow(r, c); }

double ExponentFamily::infimum() const { return a + std::min(0.0, b); }

void VarExpSpec::validate() const {
  validate_grid_inputs(d, N, radial, angular);
  if (!std::isfinite(exponent.a) || !std::isfinite(exponent.b) || !std::isfinite(exponent.c)) {
    throw RangeError("VarExpSpec: exponent parameters must be finite");
  }
  if (exponent.a < 1.0 || exponent.infimum() < 1.0) throw RangeError("VarExpSpec: exponent must stay >= 1");
  if (exponent.b != 0.0 && exponent.c < 1.0) throw RangeError("VarExpSpec: c must be >= 1 for a Lipschitz exponent");
  if (!(bisectionTol > 0.0)) throw RangeError("VarExpSpec: bisection tolerance must be positive");
}

QuadratureGrid make_grid(int d, const RadialRule& radial, const AngularRule& angular) {
  validate_grid_inputs(d, 0, radial, angular);
  QuadratureGrid g;
  g.d = d;
  g.radii = radial.nodes();
  g.radialWeights = radial.weights();
  if (angular.scheme == AngularScheme::Trapezoid) {
    g.directions.resize(1, angular.count);
    for (int k = 0; k < angular.count; ++k) g.directions(0, k) = std::polar(1.0, 2.0 * kPi * k / angular.count);
    g.angularWeights = Eigen::VectorXd::Constant(angular.count, 1.0 / angular.count);
  } else {
    g.angularWeights = sphere_directions_mc(d, angular.count, angular.seed, g.directions);
  }
  const Eigen::Index M = g.directions.cols();
  g.points.resize(d, static_cast<Eigen::Index>(g.radii.size()) * M);
  for (std::size_t i = 0; i < g.radii.size(); ++i) {
    g.points.middleCols(static_cast<Eigen::Index>(i) * M, M) = g.radii[i] * g.directions;
  }
  return g;
}

Eigen::VectorXcd sample_radial_derivative(const QuadratureGrid& grid, const Polynomial& f, int N) {
  if (f.dim() != grid.d) throw ArgumentError("sample_radial_derivative: dimension mismatch");
  return polynomial_values(grid.points, radial_derivative(f, N));
}

double mixed_norm(const MixedSpec& spec, const Polynomial& f) { return mixed_norm_estimate(spec, f).value; }

MixedNormEstimate mixed_norm_estimate(const MixedSpec& spec, const Polynomial& f) {
  spec.validate();
  if (f.dim() != spec.d) throw ArgumentError("mixed_norm: dimension mismatch");
  MixedNormEstimate est;
  if (f.is_zero()) return est;
  const QuadratureGrid grid = make_grid(spec.d, spec.radial, spec.angular);
  const Eigen::VectorXcd v = sample_radial_derivative(grid, f, spec.N);
  const double constPart = has_constant_row(spec.N, spec.includeConstantTerm)
                               ? spec.radial.mass() * std::pow(std::abs(f.constant_term()), spec.q)
                               : 0.0;
  est.value = std::pow(mixed_sum(grid, v, spec.p, spec.q) + constPart, 1.0 / spec.q);
  if (spec.angular.scheme == AngularScheme::MonteCarlo && spec.angular.count >= 16) {
    constexpr int kBatches = 8;
    std::vector<double> vals;
    for (int b = 0; b < kBatches; ++b) {
      std::vector<char> mask(static_cast<std::size_t>(spec.angular.count));
      for (int k = 0; k < spec.angular.count; ++k) mask[static_cast<std::size_t>(k)] = (k % kBatches) == b;
      vals.push_back(std::pow(mixed_sum(grid, v, spec.p, spec.q, &mask) + constPart, 1.0 / spec.q));
    }
    double mean = 0.0;
    for (double x : vals) mean += x / kBatches;
    double var = 0.0;
    for (double x : vals) var += (x - mean) * (x - mean) / (kBatches - 1);
    est.standardError = std::sqrt(var / kBatches);
  }
  return est;
}

double modular(const VarExpSpec& spec, const Polynomial& f, double lambda) {
  spec.validate();
  if (!(lambda > 0.0)) throw RangeError("modular: lambda must be > 0");
  if (f.dim() != spec.d) throw ArgumentError("modular: dimension mismatch");
  if (f.is_zero()) return 0.0;
  const QuadratureGrid grid = make_grid(spec.d, spec.radial, spec.angular);
  const VarExpSamples s = var_exp_samples(spec, grid);
  return modular_of(s, sample_radial_derivative(grid, f, spec.N), f.constant_term(), lambda);
}

double luxemburg_norm(const VarExpSpec& spec, const Polynomial& f) {
  spec.validate();
  if (f.dim() != spec.d) throw ArgumentError("luxemburg_norm: dimension mismatch");
  if (f.is_zero()) return 0.0;
  const QuadratureGrid grid = make_grid(spec.d, spec.radial, spec.angular);
  const VarExpSamples s = var_exp_samples(spec, grid);
  return luxemburg_of(s, sample_radial_derivative(grid, f, spec.N), f.constant_term(), spec.bisectionTol);
}

MixedIndexResult mixed_index(const MixedSpec& spec, const Polynomial& f, int n, const IrlsOptions& options) {
  spec.validate();
  const QuadratureGrid grid = make_grid(spec.d, spec.radial, spec.angular);
  const IndexProblem prob = index_problem(grid, f, spec.N, n);
  const bool constRow = has_constant_row(spec.N, spec.includeConstantTerm);
  const double c0 = constRow ? spec.radial.mass() : 0.0;
  const Eigen::Index M = grid.angular_count();
  const auto R = static_cast<Eigen::Index>(grid.radii.size());
  const double p = spec.p, q = spec.q;

  Eigen::VectorXd base(R * M);
  for (Eigen::Index i = 0; i < R; ++i) {
    for (Eigen::Index k = 0; k < M; ++k) base(i * M + k) = grid.radialWeights[static_cast<std::size_t>(i)] * grid.angularWeights(k);
  }
  auto objective = [&](const Eigen::VectorXcd& e, Complex e0) {
    const double F = mixed_sum(grid, e, p, q) + c0 * std::pow(std::abs(e0), q);
    return std::pow(F, 1.0 / q);
  };
  auto weightsAt = [&](const Eigen::VectorXcd& e, Complex e0, double, Eigen::VectorXd& u, double& u0) {
    u.resize(R * M);
    for (Eigen::Index i = 0; i < R; ++i) {
      double S = 0.0;
      for (Eigen::Index k = 0; k < M; ++k) S += grid.angularWeights(k) * std::pow(std::abs(e(i * M + k)), p);
      const double radialFactor = std::pow(std::max(S, options.floor), q / p - 1.0);
      for (Eigen::Index k = 0; k < M; ++k) {
        u(i * M + k) = base(i * M + k) * radialFactor * std::pow(std::max(std::abs(e(i * M + k)), options.floor), p - 2.0);
      }
    }
    u0 = c0 * std::pow(std::max(std::abs(e0), options.floor), q - 2.0);
  };
  return run_irls(prob, spec.d, n, constRow, base, c0, options, objective, weightsAt);
}

MixedIndexResult mixed_index(const VarExpSpec& spec, const Polynomial& f, int n, const IrlsOptions& options) {
  spec.validate();
  const QuadratureGrid grid = make_grid(spec.d, spec.radial, spec.angular);
  const IndexProblem prob = index_problem(grid, f, spec.N, n);
  const bool constRow = has_constant_row(spec.N, spec.includeConstantTerm);
  const VarExpSamples s = var_exp_samples(spec, grid);

  auto objective = [&](const Eigen::VectorXcd& e, Complex e0) { return luxemburg_of(s, e, e0, spec.bisectionTol); };
  auto weightsAt = [&](const Eigen::VectorXcd& e, Complex e0, double lambda, Eigen::VectorXd& u, double& u0) {
    const double lam = lambda > 0.0 ? lambda : 1.0;
    u.resize(e.size());
    for (Eigen::Index j = 0; j < e.size(); ++j) {
      const double pj = s.exponents(j);
      u(j) = s.weights(j) * pj * std::pow(std::max(std::abs(e(j)), options.floor) / lam, pj - 2.0);
    }
    u0 = s.constWeight * s.constExponent * std::pow(std::max(std::abs(e0), options.floor) / lam, s.constExponent - 2.0);
  };
  return run_irls(prob, spec.d, n, constRow, s.weights, s.constWeight, options, objective, weightsAt);
}

}  // namespace cyc
