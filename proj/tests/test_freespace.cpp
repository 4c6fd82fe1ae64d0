#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cyclicity/freespace.hpp"

using namespace cyc;

namespace {

FreePolynomial random_free(int d, int L, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  FreePolynomial F(d);
  for (const Word& w : enumerate_words(d, L)) {
    const double re = g(rng);
    const double im = g(rng);
    F.set(w, Complex(re, im));
  }
  return F;
}

}  // namespace

TEST_CASE("words enumerate by length then lexicographically") {
  const auto w = enumerate_words(2, 2);
  const std::vector<Word> expect{Word{}, Word{1}, Word{2}, Word{1, 1}, Word{1, 2}, Word{2, 1}, Word{2, 2}};
  CHECK(w == expect);
  CHECK(word_count(2, 2) == 7);
  CHECK(word_count(3, 3) == 40);
  CHECK(word_count(1, 5) == 6);
}

TEST_CASE("free multiplication does not commute") {
  const FreePolynomial Z1 = FreePolynomial::variable(2, 1), Z2 = FreePolynomial::variable(2, 2);
  CHECK_FALSE(Z1 * Z2 == Z2 * Z1);
  CHECK((Z1 * Z2).coeff(Word{1, 2}) == Complex(1.0));
  CHECK_THROWS_AS(FreePolynomial::variable(2, 3), ArgumentError);
}

TEST_CASE("free inversion is a one-sided geometric series") {
  const FreePolynomial psi = FreePolynomial::identity(2) - FreePolynomial::variable(2, 1) * Complex(0.5);
  const FreePolynomial theta = free_invert(psi, 6);
  for (int k = 0; k <= 6; ++k) CHECK(std::abs(theta.coeff(Word(std::vector<int>(k, 1))) - std::pow(0.5, k)) < 1e-15);
  const FreePolynomial prod = psi * theta;
  for (const auto& [w, c] : prod) {
    if (w.empty()) CHECK(std::abs(c - 1.0) < 1e-14);
    else if (w.length() <= 6) CHECK(std::abs(c) < 1e-14);
  }
  CHECK_THROWS_AS(free_invert(FreePolynomial::variable(2, 1), 3), SingularInversionError);
}

TEST_CASE("inversion of random series cancels to the truncation length") {
  std::mt19937_64 rng(21);
  FreePolynomial psi = random_free(2, 2, rng);
  psi.set(Word{}, 4.0);
  const FreePolynomial prod = psi * free_invert(psi, 5);
  for (const auto& [w, c] : prod) {
    if (!w.empty() && w.length() <= 5) CHECK(std::abs(c) < 1e-12);
  }
}

TEST_CASE("abelianization counts letters") {
  const FreePolynomial Z1 = FreePolynomial::variable(2, 1), Z2 = FreePolynomial::variable(2, 2);
  const Polynomial p = abelianize(Z1 * Z2 + Z2 * Z1 + FreePolynomial::identity(2, 3.0));
  CHECK(p.coeff(MultiIndex{1, 1}) == Complex(2.0));
  CHECK(p.constant_term() == Complex(3.0));
}

TEST_CASE("abelianization is a contraction into Drury-Arveson space") {
  std::mt19937_64 rng(22);
  const FreeSpaceSpec fh = FreeSpaceSpec::free_hardy(2, 4);
  const SpaceSpec da = SpaceSpec::drury_arveson(2, 4);
  for (int t = 0; t < 20; ++t) {
    const FreePolynomial F = random_free(2, 4, rng);
    CHECK(norm(da, abelianize(F)) <= free_norm(fh, F) + 1e-12);
  }
}

TEST_CASE("free space weights") {
  const FreeSpaceSpec b = FreeSpaceSpec::free_besov(2, 0.5, 4);
  CHECK(b.length_weight(3) == doctest::Approx(4.0));
  CHECK_THROWS_AS(b.length_weight(5), RangeError);
  CHECK(FreeSpaceSpec::free_hardy(2).kind() == FreeWeightKind::FreeHardy);
  CHECK_THROWS_AS(FreeSpaceSpec::custom(1, {1.0, -1.0}), ArgumentError);
}

TEST_CASE("one-letter free index equals the Hardy index") {
  const FreeSpaceSpec fh = FreeSpaceSpec::free_hardy(1, 12);
  const FreePolynomial G = FreePolynomial::identity(1) - FreePolynomial::variable(1, 1);
  for (int n = 0; n <= 10; ++n) {
    const double r = free_subspace_distance(fh, FreePolynomial::identity(1), G, n).residual;
    CHECK(r * r == doctest::Approx(1.0 / (n + 2)).epsilon(1e-10));
  }
}

TEST_CASE("free index of a letter is 1") {
  const FreeSpaceSpec fh = FreeSpaceSpec::free_hardy(2, 6);
  const FreePolynomial Z2 = FreePolynomial::variable(2, 2);
  CHECK(free_subspace_distance(fh, FreePolynomial::identity(2), Z2, 4).residual == doctest::Approx(1.0).epsilon(1e-13));
  CHECK_THROWS_AS(free_subspace_distance(fh, FreePolynomial::identity(2), Z2, 6), RangeError);
}

TEST_CASE("left multiplication by a letter is an isometry in free Hardy space") {
  const FreeSpaceSpec fh = FreeSpaceSpec::free_hardy(2, 5);
  const Eigen::MatrixXcd S = free_mult_operator_section(fh, FreePolynomial::variable(2, 1), 4, 5);
  CHECK((S.adjoint() * S - Eigen::MatrixXcd::Identity(S.cols(), S.cols())).norm() < 1e-14);
}

TEST_CASE("tuple evaluation is multiplicative") {
  std::mt19937_64 rng(23);
  const FreePolynomial F = random_free(2, 2, rng), G = random_free(2, 2, rng);
  const MatrixTuple Z = sample_row_contraction(2, 4, 0.7, 5);
  CHECK((evaluate_on_tuple(F * G, Z) - evaluate_on_tuple(F, Z) * evaluate_on_tuple(G, Z)).norm() < 1e-12);
  const Eigen::MatrixXcd direct = Z[0] * Z[1];
  CHECK((evaluate_on_tuple(FreePolynomial::word(2, Word{1, 2}), Z) - direct).norm() < 1e-14);
}

TEST_CASE("row contractions have the requested row norm") {
  for (double rho : {0.1, 0.5, 0.95}) {
    const MatrixTuple Z = sample_row_contraction(3, 5, rho, 17);
    CHECK(Z.size() == 3);
    CHECK(row_norm(Z) == doctest::Approx(rho).epsilon(1e-12));
  }
  CHECK_THROWS_AS(sample_row_contraction(2, 3, 1.0, 1), ValidationError);
}

TEST_CASE("compression never increases the index") {
  std::mt19937_64 rng(24);
  for (int t = 0; t < 10; ++t) {
    const FreePolynomial G = random_free(2, 1, rng);
    const CompressionReport r = compression_check(FreeSpaceSpec::free_hardy(2, 5), SpaceSpec::drury_arveson(2, 5), G, 4);
    CHECK(r.holds);
    CHECK(r.freeResidual >= r.commutativeResidual - 1e-10);
  }
}

TEST_CASE("free corona check for a shifted letter") {
  const FreePolynomial psi = FreePolynomial::identity(2, 2.0) - FreePolynomial::variable(2, 1);
  const FreeCoronaReport r = free_corona_check(psi, 0.9, 20, 6, 3, {0, 2, 4, 6, 8}, 3);
  CHECK(r.minSingularValue >= 1.1);
  CHECK(r.envelope == doctest::Approx(1.0 / (2.0 - 0.9 * std::sqrt(2.0))).epsilon(1e-12));
  CHECK(r.sectionNorms.size() == 5);
  for (double s : r.sectionNorms) CHECK(s <= 1.0 + 1e-12);
  CHECK(r.stabilized);
}
