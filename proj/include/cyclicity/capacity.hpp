#pragma once

// Boundary zero sets and their potential-theoretic size.
//
// A BoundaryCloud stores points of the unit sphere of C^d as columns of a
// (2d x n) real matrix, coordinates ordered (Re z_1, Im z_1, Re z_2, ...).

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cyclicity/cyclicity.hpp"
#include "cyclicity/poly.hpp"
#include "cyclicity/spaces.hpp"

namespace cyc {

class BoundaryCloud {
 public:
  BoundaryCloud() = default;
  // Columns are normalized; throws if a column is (numerically) zero.
  BoundaryCloud(int d, Eigen::MatrixXd points, double sourceTol = 0.0);
  static BoundaryCloud empty(int d) { return BoundaryCloud(d, Eigen::MatrixXd(2 * d, 0)); }

  int dim() const { return d_; }
  Eigen::Index size() const { return points_.cols(); }
  bool is_empty() const { return points_.cols() == 0; }
  const Eigen::MatrixXd& points() const { return points_; }
  Eigen::VectorXd point(Eigen::Index i) const { return points_.col(i); }
  Eigen::VectorXcd complex_point(Eigen::Index i) const;
  double source_tol() const { return sourceTol_; }

  // Removes points within tol of an earlier point.
  BoundaryCloud deduplicated(double tol = 1e-12) const;
  BoundaryCloud merged(const BoundaryCloud& other) const;

 private:
  int d_ = 1;
  Eigen::MatrixXd points_ = Eigen::MatrixXd(2, 0);
  double sourceTol_ = 0.0;
};

// Sample clouds used by oracles and the CLI.
BoundaryCloud circle_cloud(Eigen::Index n);                       // equispaced, full circle
BoundaryCloud arc_cloud(Eigen::Index n, double angle);            // equispaced on [0, angle], endpoints included
// Fibonacci-lattice points on the great 2-sphere {(x, y, z, 0)} inside the unit sphere of C^2,
// restricted to polar angle <= capAngle.
BoundaryCloud sphere_patch_cloud(Eigen::Index n, double capAngle);

struct ZeroSetOptions {
  int resolution = 4096;
  std::optional<double> tol;  // defaults 1e-9 (d = 1) and 1e-4 (d >= 2)
  std::uint64_t seed = 0;
};

BoundaryCloud sample_zero_set(const Polynomial& f, const ZeroSetOptions& options = {});

struct EquilibriumResult {
  Eigen::VectorXd weights;
  double energy = 0.0;     // +inf for fewer than two points
  double capacity = 0.0;
  double alpha = 0.0;
  int iterations = 0;
  double kktGap = 0.0;
  double uniformEnergy = 0.0;
  bool converged = false;
  bool degenerate = false;  // fewer than two distinct points: capacity 0 by convention
  Eigen::Index pointsUsed = 0;
};

struct EquilibriumOptions {
  int maxIter = 200000;
  double tol = 1e-9;
};

// Interaction kernel: |x - y|^{-alpha} (alpha > 0) or -log|x - y| (alpha = 0).
double riesz_kernel(double distance, double alpha);

// Effective self-distance of point i: e^{-3/2} times the mean distance to its
// two nearest neighbours. For the logarithmic kernel on an evenly sampled
// curve this reproduces the self-energy of the arc each point stands for.
Eigen::VectorXd self_distances(const BoundaryCloud& cloud);

EquilibriumResult riesz_equilibrium(const BoundaryCloud& cloud, double alpha, const EquilibriumOptions& options = {});

struct NeighbourhoodOptions {
  int samples = 1 << 16;
  std::uint64_t seed = 12345;
};

// Normalized surface measure of the epsNbhd-neighbourhood of the cloud.
double paper_capacity(const BoundaryCloud& cloud, double alpha, double epsNbhd, const NeighbourhoodOptions& options = {});

struct BoxDimension {
  double dimension = 0.0;
  double rSquared = 1.0;
  std::vector<int> scales;
  std::vector<std::size_t> counts;
};

BoxDimension box_dimension(const BoundaryCloud& cloud, int jMin, int jMax);

struct InteriorZeroProbe {
  bool found = false;
  Eigen::VectorXcd point;
  double minModulus = 0.0;
};

// Grid search plus Newton refinement for zeros of f with |z| <= rMax.
InteriorZeroProbe interior_zero_probe(const Polynomial& f, double rMax = 0.95, std::uint64_t seed = 0);

struct ObstructionOptions {
  SweepOptions sweep;
  double capacityThreshold = 1e-3;
  ZeroSetOptions zeroSet;
  EquilibriumOptions equilibrium;
  double epsNbhd = 1e-2;
  int jMin = 2;
  int jMax = 8;
};

enum class ObstructionVerdict { ObstructionDetected, ConsistentWithCyclicity, Tension };
std::string to_string(ObstructionVerdict v);

struct ObstructionReport {
  SweepReport sweep;
  Eigen::Index cloudSize = 0;
  EquilibriumResult equilibrium;
  double paperCapacity = 0.0;
  std::optional<BoxDimension> boxDimension;
  InteriorZeroProbe interior;
  bool sweepDecreasing = false;
  ObstructionVerdict verdict = ObstructionVerdict::Tension;
};

// Heuristic cross-check of zero-set geometry against the degree sweep.
ObstructionReport obstruction_report(const SpaceSpec& spec, const Polynomial& f, int nMax, double alpha,
                                     const ObstructionOptions& options = {});

}  // namespace cyc
