#pragma once

// Finite-degree cyclicity indices.
//
// C_n(f) = min over deg(phi) <= n of ||1 - phi f||, computed as an exact
// weighted least-squares problem in the diagonal basis of a SpaceSpec. The
// value is an upper bound for the infimum over all multipliers; sweeps over n
// report how it behaves as the degree budget grows.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cyclicity/least_squares.hpp"
#include "cyclicity/operators.hpp"
#include "cyclicity/poly.hpp"
#include "cyclicity/spaces.hpp"

namespace cyc {

template <class Poly>
struct BasicApproximant {
  int n = 0;
  Poly phi;
  double residual = 0.0;
  double gramCondition = 1.0;
  SolveMethod solveMethod = SolveMethod::Cholesky;
  // ||g||^2 and ||g||^2 - Re b^H x, kept for the normal-equations identity.
  double targetNormSq = 0.0;
  double normalEquationResidualSq = 0.0;
};

using ApproximantResult = BasicApproximant<Polynomial>;

// argmin / min of ||g - phi f|| over deg(phi) <= n.
ApproximantResult subspace_distance(const SpaceSpec& spec, const Polynomial& g, const Polynomial& f, int n);

// subspace_distance with g = 1.
ApproximantResult cyclicity_index(const SpaceSpec& spec, const Polynomial& f, int n);

enum class FitModel { None, InverseLog, InversePoly };
enum class Verdict { NumericallyCyclic, Plateau, Inconclusive };

std::string to_string(FitModel m);
std::string to_string(Verdict v);

// C_n ~ a + b / log(n + 2)   or   C_n ~ a + b / (n + 2)^c
struct SweepFit {
  FitModel model = FitModel::None;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double rss = 0.0;
};

struct SweepOptions {
  double tol = 1e-3;
  int plateauWindow = 5;
  double plateauVariation = 1e-6;
  int threads = 1;
};

struct SweepReport {
  std::vector<int> degrees;
  std::vector<double> residuals;
  std::vector<double> gramConditions;
  std::vector<SolveMethod> solveMethods;
  std::optional<SweepFit> inverseLogFit;
  std::optional<SweepFit> inversePolyFit;
  FitModel fitModel = FitModel::None;
  std::optional<double> fittedLimit;
  Verdict verdict = Verdict::Inconclusive;
  SweepOptions options;
};

SweepReport index_sweep(const SpaceSpec& spec, const Polynomial& f, int nMax, const SweepOptions& options = {});

// Least-squares fits on the tail of a residual sequence (exposed for testing).
std::optional<SweepFit> fit_inverse_log(const std::vector<int>& n, const std::vector<double>& r);
std::optional<SweepFit> fit_inverse_poly(const std::vector<int>& n, const std::vector<double>& r);

struct PerturbationReport {
  int n = 0;
  double epsilon = 0.0;          // ||1 - phi* f||
  double delta = 0.0;            // ||f - g||
  double lhs = 0.0;              // ||1 - phi* g||
  double realizedRatio = 0.0;    // ||phi* (f - g)|| / ||f - g||, 0 when delta = 0
  double bound = 0.0;            // epsilon + realizedRatio * delta
  double slack = 0.0;            // bound - lhs
  MultiplierNormBound multiplierNorm;  // lower bound for ||phi*||_Mult
  double sectionBound = 0.0;     // epsilon + multiplierNorm.lowerBound * delta (informational)
  bool holds = false;
};

// Realized form of ||1 - phi g|| <= eps + M delta with phi the degree-n optimum for f.
PerturbationReport check_perturbation_bound(const SpaceSpec& spec, const Polynomial& f, const Polynomial& g, int n);

struct PerturbedSpace {
  SpaceSpec spec;
  double nominalEpsilon = 0.0;
  double realizedEpsilon = 0.0;  // max |m'[j]/m[j] - 1| after the monotone repair
};

// Multiplies each moment by an independent factor from U[1-eps, 1+eps] and
// restores monotonicity with a running minimum.
PerturbedSpace perturb_weights(const SpaceSpec& spec, double epsilon, std::uint64_t seed);

struct WeightStabilityReport {
  int n = 0;
  double epsilon = 0.0;
  double index = 0.0;           // C_{n, omega}(f)
  double perturbedIndex = 0.0;  // C_{n, omega'}(f)
  double transferred = 0.0;     // ||1 - phi_omega f|| in omega'
  double bound = 0.0;           // sqrt(1 + eps) C_{n, omega}(f) + 1e-10
  double ratio = 0.0;           // perturbedIndex / index, 1 when both vanish
  bool holds = false;
};

WeightStabilityReport check_weight_stability(const SpaceSpec& spec, const PerturbedSpace& perturbed,
                                             const Polynomial& f, int n);

// Distance from phi^k to the degree-n part of [phi^{k+1}].
double check_class_Cn(const SpaceSpec& spec, const Polynomial& phi, int k, int n);

}  // namespace cyc
