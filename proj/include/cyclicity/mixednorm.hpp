#pragma once

// Mixed-norm and variable-exponent norms of radial-derivative data, computed
// by a product quadrature over radius and sphere direction.

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "cyclicity/poly.hpp"
#include "cyclicity/spaces.hpp"

namespace cyc {

// Gauss-Legendre nodes and weights on [-1, 1] (Golub-Welsch).
struct GaussRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};
GaussRule gauss_legendre(int count);

// Discrete radial measure on (0, 1].
class RadialRule {
 public:
  RadialRule(std::vector<double> nodes, std::vector<double> weights);
  static RadialRule point_mass();          // delta at r = 1
  static RadialRule bergman(int count = 32);  // 2r dr on [0, 1]

  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return nodes_.size(); }
  double mass() const;

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

enum class AngularScheme { Trapezoid, MonteCarlo };

struct AngularRule {
  AngularScheme scheme = AngularScheme::Trapezoid;
  int count = 256;
  std::uint64_t seed = 0;

  static AngularRule trapezoid(int count = 256) { return {AngularScheme::Trapezoid, count, 0}; }
  static AngularRule monte_carlo(int count, std::uint64_t seed) { return {AngularScheme::MonteCarlo, count, seed}; }
  // Trapezoid for d = 1, Monte Carlo otherwise.
  static AngularRule for_dim(int d, int count = 256, std::uint64_t seed = 0);
};

struct MixedSpec {
  int d = 1;
  int N = 0;
  double p = 2.0;
  double q = 2.0;
  RadialRule radial = RadialRule::point_mass();
  AngularRule angular;
  bool includeConstantTerm = true;  // adds mass(mu) |f(0)|^q when N > 0

  void validate() const;
};

// Radial measure and derivative order matching a preset (hardy, bergman, dirichlet_type).
MixedSpec mixed_spec_for(Preset preset, int d, double p, double q, int angularCount = 256, std::uint64_t seed = 0);

// p(r) = a + b r^c.
struct ExponentFamily {
  double a = 2.0;
  double b = 0.0;
  double c = 1.0;
  double operator()(double r) const;
  double infimum() const;
};

struct VarExpSpec {
  int d = 1;
  int N = 0;
  ExponentFamily exponent;
  RadialRule radial = RadialRule::point_mass();
  AngularRule angular;
  bool includeConstantTerm = true;  // adds mass(mu) |f(0) / lambda|^a when N > 0
  double bisectionTol = 1e-13;

  void validate() const;
};

// Product grid: point (i, k) = r_i w_k with weight mu_i sigma_k, stored at i * angularCount + k.
struct QuadratureGrid {
  int d = 1;
  std::vector<double> radii;
  std::vector<double> radialWeights;
  Eigen::MatrixXcd directions;      // d x angularCount
  Eigen::VectorXd angularWeights;   // sums to 1
  Eigen::MatrixXcd points;          // d x (radii * angularCount)

  Eigen::Index angular_count() const { return directions.cols(); }
};

QuadratureGrid make_grid(int d, const RadialRule& radial, const AngularRule& angular);

// Values of R^N f on every grid point.
Eigen::VectorXcd sample_radial_derivative(const QuadratureGrid& grid, const Polynomial& f, int N);

double mixed_norm(const MixedSpec& spec, const Polynomial& f);

struct MixedNormEstimate {
  double value = 0.0;
  double standardError = 0.0;  // 0 for deterministic angular rules
};

// Monte Carlo standard error from 8 angular batches.
MixedNormEstimate mixed_norm_estimate(const MixedSpec& spec, const Polynomial& f);

double modular(const VarExpSpec& spec, const Polynomial& f, double lambda);
double luxemburg_norm(const VarExpSpec& spec, const Polynomial& f);

struct MixedIndexResult {
  int n = 0;
  double objective = 0.0;
  Polynomial phi;
  int iterations = 0;
  bool converged = false;
};

struct IrlsOptions {
  int maxIter = 500;
  double tol = 1e-10;
  double floor = 1e-12;  // lower clamp on |e| in the reweighting
};

MixedIndexResult mixed_index(const MixedSpec& spec, const Polynomial& f, int n, const IrlsOptions& options = {});
MixedIndexResult mixed_index(const VarExpSpec& spec, const Polynomial& f, int n, const IrlsOptions& options = {});

}  // namespace cyc
