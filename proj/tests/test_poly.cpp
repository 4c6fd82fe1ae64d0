#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cyclicity/poly.hpp"

using namespace cyc;

namespace {

Polynomial random_poly(int d, int degree, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Polynomial f(d);
  for (const auto& a : graded_monomials(d, degree)) {
    const double re = g(rng);
    const double im = g(rng);
    f.set(a, Complex(re, im));
  }
  return f;
}

Eigen::VectorXcd random_point(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::VectorXcd z(d);
  for (int j = 0; j < d; ++j) {
    const double re = g(rng);
    const double im = g(rng);
    z(j) = 0.4 * Complex(re, im);
  }
  return z;
}

}  // namespace

TEST_CASE("graded lex order within and across degrees") {
  const auto mons = graded_monomials(2, 2);
  const std::vector<MultiIndex> expect{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
  CHECK(mons == expect);
  CHECK(MultiIndex({1, 0}) < MultiIndex({0, 1}));
  CHECK(MultiIndex({0, 1}) < MultiIndex({2, 0}));
}

TEST_CASE("monomial counts match enumeration") {
  for (int d = 1; d <= 4; ++d) {
    for (int k = 0; k <= 6; ++k) CHECK(graded_monomials(d, k).size() == monomial_count(d, k));
  }
}

TEST_CASE("multi-index validation and arithmetic") {
  CHECK_THROWS_AS(MultiIndex({1, -1}), ArgumentError);
  const MultiIndex a{2, 1}, b{1, 1};
  CHECK(b.divides(a));
  CHECK(a - b == MultiIndex{1, 0});
  CHECK_THROWS_AS(b - a, ArgumentError);
  CHECK((a + b).degree() == 5);
}

TEST_CASE("product of conjugate linear factors") {
  const Polynomial z = Polynomial::variable(1, 0);
  const Polynomial one = Polynomial::constant(1, 1.0);
  const Polynomial p = (one - z) * (one + z);
  CHECK(p == one - z * z);
  CHECK(p.degree() == 2);
}

TEST_CASE("ring axioms on random polynomials") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 1 + trial % 3;
    const Polynomial f = random_poly(d, 2, rng), g = random_poly(d, 3, rng), h = random_poly(d, 1, rng);
    const Eigen::VectorXcd z = random_point(d, rng);
    CHECK(std::abs(evaluate(f * g, z) - evaluate(g * f, z)) < 1e-12);
    CHECK(std::abs(evaluate((f * g) * h, z) - evaluate(f * (g * h), z)) < 1e-12);
    CHECK(std::abs(evaluate(f * (g + h), z) - evaluate(f * g + f * h, z)) < 1e-12);
    CHECK(std::abs(evaluate(f * g, z) - evaluate(f, z) * evaluate(g, z)) < 1e-12);
  }
}

TEST_CASE("dimension mismatch is rejected") {
  CHECK_THROWS_AS(Polynomial::variable(1, 0) + Polynomial::variable(2, 0), ArgumentError);
  CHECK_THROWS_AS(Polynomial::variable(2, 2), ArgumentError);
}

TEST_CASE("radial derivative scales by total degree") {
  const Polynomial f = Polynomial::monomial(MultiIndex{2, 1}, 3.0) + Polynomial::constant(2, 5.0);
  const Polynomial r = radial_derivative(f, 1);
  CHECK(r.coeff(MultiIndex{2, 1}) == Complex(9.0));
  CHECK(r.constant_term() == Complex(0.0));
  CHECK(radial_derivative(f, 0) == f);
  CHECK(radial_derivative(f, 2).coeff(MultiIndex{2, 1}) == Complex(27.0));
}

TEST_CASE("radial derivative agrees with sum z_j d/dz_j") {
  std::mt19937_64 rng(2);
  const Polynomial f = random_poly(3, 3, rng);
  Polynomial euler(3);
  for (int j = 0; j < 3; ++j) euler += Polynomial::variable(3, j) * partial_derivative(f, j);
  const Eigen::VectorXcd z = random_point(3, rng);
  CHECK(std::abs(evaluate(euler, z) - evaluate(radial_derivative(f, 1), z)) < 1e-12);
}

TEST_CASE("geometric series inverts 1 - z and 2 - z") {
  const Polynomial z = Polynomial::variable(1, 0);
  const Polynomial q1 = invert_power_series(Polynomial::constant(1, 1.0) - z, 10);
  const Polynomial q2 = invert_power_series(Polynomial::constant(1, 2.0) - z, 10);
  for (int k = 0; k <= 10; ++k) {
    CHECK(std::abs(q1.coeff(MultiIndex{k}) - 1.0) < 1e-15);
    CHECK(std::abs(q2.coeff(MultiIndex{k}) - std::ldexp(1.0, -k - 1)) < 1e-15);
  }
  CHECK(q1.degree() == 10);
}

TEST_CASE("inverse series cancels through the truncation degree") {
  std::mt19937_64 rng(3);
  Polynomial p = random_poly(2, 2, rng);
  p.set(MultiIndex::zero(2), 3.0);
  const int L = 6;
  const Polynomial prod = p * invert_power_series(p, L);
  for (const auto& [a, c] : prod) {
    if (a.degree() == 0) CHECK(std::abs(c - 1.0) < 1e-12);
    else if (a.degree() <= L) CHECK(std::abs(c) < 1e-12);
  }
}

TEST_CASE("inversion needs a nonzero constant term") {
  CHECK_THROWS_AS(invert_power_series(Polynomial::variable(1, 0), 3), SingularInversionError);
}

TEST_CASE("homogeneous parts and truncation") {
  std::mt19937_64 rng(4);
  const Polynomial f = random_poly(2, 4, rng);
  Polynomial sum(2);
  for (int k = 0; k <= 4; ++k) sum += f.homogeneous_part(k);
  CHECK(sum == f);
  CHECK(f.truncated(2).degree() == 2);
  CHECK(Polynomial(2).degree() == -1);
}

TEST_CASE("power by repeated multiplication") {
  const Polynomial f = Polynomial::constant(1, 1.0) - Polynomial::variable(1, 0);
  const Polynomial f3 = pow(f, 3);
  CHECK(f3.coeff(MultiIndex{1}) == Complex(-3.0));
  CHECK(f3.coeff(MultiIndex{2}) == Complex(3.0));
  CHECK(f3.coeff(MultiIndex{3}) == Complex(-1.0));
  CHECK(pow(f, 0) == Polynomial::constant(1, 1.0));
}
