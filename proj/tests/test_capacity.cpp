#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "cyclicity/capacity.hpp"

using namespace cyc;

namespace {

constexpr double kPi = std::numbers::pi;

Polynomial one() { return Polynomial::constant(1, 1.0); }
Polynomial z() { return Polynomial::variable(1, 0); }

}  // namespace

TEST_CASE("boundary zeros of simple polynomials") {
  const BoundaryCloud a = sample_zero_set(one() - z());
  REQUIRE(a.size() == 1);
  CHECK(std::abs(a.complex_point(0)(0) - 1.0) < 1e-9);
  CHECK(sample_zero_set(one() * Complex(2.0) - z()).is_empty());
  const BoundaryCloud b = sample_zero_set(one() + z() * z());
  REQUIRE(b.size() == 2);
  for (Eigen::Index i = 0; i < 2; ++i) CHECK(std::abs(std::abs(b.complex_point(i)(0).imag()) - 1.0) < 1e-9);
  CHECK(sample_zero_set(pow(one() - z(), 2)).size() == 1);
  CHECK(sample_zero_set(z()).is_empty());
  CHECK_THROWS_AS(sample_zero_set(Polynomial(1)), DegenerateInputError);
}

TEST_CASE("sampled zeros in two variables lie on the zero set") {
  const Polynomial f = Polynomial::variable(2, 0) - Polynomial::variable(2, 1);
  ZeroSetOptions o;
  o.resolution = 200;
  o.seed = 9;
  const BoundaryCloud c = sample_zero_set(f, o);
  CHECK(c.size() > 100);
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    CHECK(std::abs(evaluate(f, c.complex_point(i))) < 1e-4);
    CHECK(c.point(i).norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
  ZeroSetOptions o2 = o;
  CHECK(sample_zero_set(f, o2).points() == c.points());
}

TEST_CASE("cloud construction") {
  CHECK_THROWS_AS(BoundaryCloud(1, Eigen::MatrixXd::Zero(2, 1)), ArgumentError);
  CHECK_THROWS_AS(BoundaryCloud(2, Eigen::MatrixXd::Ones(2, 1)), ArgumentError);
  const BoundaryCloud c = circle_cloud(8);
  CHECK(c.merged(c).deduplicated().size() == 8);
  CHECK(arc_cloud(5, kPi).complex_point(4)(0).real() == doctest::Approx(-1.0));
}

TEST_CASE("equilibrium weights form a certified probability vector") {
  const BoundaryCloud c = arc_cloud(128, 2.0);
  for (double alpha : {0.0, 0.5}) {
    const EquilibriumResult r = riesz_equilibrium(c, alpha);
    CHECK(r.weights.minCoeff() >= 0.0);
    CHECK(r.weights.sum() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(r.energy <= r.uniformEnergy + 1e-12);
    CHECK(r.converged);
    CHECK(r.kktGap <= 1e-9);
    if (alpha > 0.0) CHECK(r.capacity == doctest::Approx(1.0 / r.energy));
    else CHECK(r.capacity == doctest::Approx(std::exp(-r.energy)));
  }
}

TEST_CASE("arc capacities follow sin(theta / 4)") {
  for (double theta : {kPi / 2.0, kPi, 3.0 * kPi / 2.0}) {
    const double cap = riesz_equilibrium(arc_cloud(512, theta), 0.0).capacity;
    CHECK(cap == doctest::Approx(std::sin(theta / 4.0)).epsilon(0.02));
  }
}

TEST_CASE("circle energies settle under refinement") {
  std::vector<double> caps;
  for (int n : {256, 512, 1024}) caps.push_back(riesz_equilibrium(circle_cloud(n), 0.0).capacity);
  for (double c : caps) CHECK(c == doctest::Approx(1.0).epsilon(0.02));
  CHECK(std::abs(caps[2] - caps[1]) <= 0.02 * caps[2]);
}

TEST_CASE("points carry zero capacity") {
  const EquilibriumResult r = riesz_equilibrium(circle_cloud(1), 0.0);
  CHECK(r.degenerate);
  CHECK(r.capacity == 0.0);
  CHECK(std::isinf(r.energy));
  CHECK(riesz_equilibrium(BoundaryCloud::empty(1), 1.0).capacity == 0.0);
  CHECK(riesz_equilibrium(circle_cloud(1).merged(circle_cloud(1)), 0.0).degenerate);
  CHECK_THROWS_AS(riesz_equilibrium(circle_cloud(4), -1.0), ArgumentError);
}

TEST_CASE("neighbourhood measure") {
  CHECK(paper_capacity(BoundaryCloud::empty(1), 1.0, 0.1) == 0.0);
  CHECK(paper_capacity(circle_cloud(512), 1.0, 0.05) == 1.0);
  const double theta = 1.0;
  const double small = paper_capacity(arc_cloud(4096, theta), 1.0, 1e-3);
  CHECK(small == doctest::Approx(theta / (2.0 * kPi)).epsilon(0.02));
  const BoundaryCloud a = arc_cloud(64, 1.0);
  double prev = 1.0;
  for (double eps : {0.5, 0.2, 0.1, 0.01, 0.001}) {
    const double v = paper_capacity(a, 1.0, eps);
    CHECK(v <= prev + 1e-12);
    prev = v;
  }
  const BoundaryCloud bigger = a.merged(arc_cloud(64, 3.0));
  CHECK(paper_capacity(bigger, 1.0, 0.05) >= paper_capacity(a, 1.0, 0.05) - 1e-12);
  CHECK_THROWS_AS(paper_capacity(a, 1.0, 0.0), ArgumentError);
}

TEST_CASE("neighbourhood measure in two variables") {
  const BoundaryCloud patch = sphere_patch_cloud(256, kPi / 4.0);
  const double v1 = paper_capacity(patch, 1.0, 0.3, {4096, 1});
  const double v2 = paper_capacity(patch, 1.0, 0.1, {4096, 1});
  CHECK(v1 >= v2);
  CHECK(v1 > 0.0);
  CHECK(v1 < 1.0);
}

TEST_CASE("box-counting dimension") {
  CHECK(box_dimension(circle_cloud(1), 2, 8).dimension == 0.0);
  CHECK(box_dimension(arc_cloud(4096, kPi / 2.0), 3, 8).dimension == doctest::Approx(1.0).epsilon(0.15));
  CHECK(box_dimension(sphere_patch_cloud(4096, kPi / 3.0), 1, 4).dimension == doctest::Approx(2.0).epsilon(0.1));
  CHECK_THROWS_AS(box_dimension(BoundaryCloud::empty(1), 2, 8), DegenerateInputError);
  CHECK_THROWS_AS(box_dimension(circle_cloud(4), 3, 3), ArgumentError);
}

TEST_CASE("box-counting dimension of a union") {
  const BoundaryCloud a = arc_cloud(2048, 1.0), b = arc_cloud(2048, 2.0);
  const double da = box_dimension(a, 3, 8).dimension, db = box_dimension(b, 3, 8).dimension;
  CHECK(box_dimension(a.merged(b), 3, 8).dimension >= std::max(da, db) - 0.1);
}

TEST_CASE("interior zero probe") {
  const InteriorZeroProbe p = interior_zero_probe(z());
  CHECK(p.found);
  CHECK(std::abs(p.point(0)) < 1e-8);
  const InteriorZeroProbe q = interior_zero_probe(z() - one() * Complex(0.3, 0.4));
  CHECK(q.found);
  CHECK(std::abs(q.point(0) - Complex(0.3, 0.4)) < 1e-8);
  CHECK_FALSE(interior_zero_probe(one() * Complex(2.0) - z()).found);
  CHECK(interior_zero_probe(Polynomial::variable(2, 0) * Polynomial::variable(2, 1), 0.95, 4).found);
}

TEST_CASE("obstruction report verdicts") {
  const SpaceSpec h = SpaceSpec::preset(Preset::Hardy, 1);
  CHECK(obstruction_report(h, z(), 20, 0.0).verdict == ObstructionVerdict::ObstructionDetected);
  const ObstructionReport r = obstruction_report(h, one() - z(), 20, 0.0);
  CHECK(r.verdict == ObstructionVerdict::ConsistentWithCyclicity);
  CHECK(r.cloudSize == 1);
  CHECK(r.equilibrium.capacity == 0.0);
  REQUIRE(r.boxDimension.has_value());
  CHECK(r.boxDimension->dimension == 0.0);
  CHECK(obstruction_report(h, one() * Complex(2.0) - z(), 20, 0.0).verdict == ObstructionVerdict::ConsistentWithCyclicity);
  CHECK(to_string(ObstructionVerdict::Tension) == "tension");
}
