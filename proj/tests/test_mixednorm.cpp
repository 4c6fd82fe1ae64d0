#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cyclicity/cyclicity.hpp"
#include "cyclicity/mixednorm.hpp"

using namespace cyc;

namespace {

Polynomial one() { return Polynomial::constant(1, 1.0); }
Polynomial z() { return Polynomial::variable(1, 0); }

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

VarExpSpec constant_exponent(const MixedSpec& m, double p) {
  VarExpSpec v;
  v.d = m.d;
  v.N = m.N;
  v.radial = m.radial;
  v.angular = m.angular;
  v.exponent = ExponentFamily{p, 0.0, 1.0};
  return v;
}

}  // namespace

TEST_CASE("Gauss-Legendre rule is exact to degree 2K - 1") {
  const GaussRule g = gauss_legendre(8);
  CHECK(g.weights.sum() == doctest::Approx(2.0).epsilon(1e-14));
  for (int k = 0; k <= 15; ++k) {
    double s = 0.0;
    for (int i = 0; i < 8; ++i) s += g.weights(i) * std::pow(g.nodes(i), k);
    const double exact = k % 2 == 1 ? 0.0 : 2.0 / (k + 1);
    CHECK(s == doctest::Approx(exact).epsilon(1e-13));
  }
}

TEST_CASE("radial rules") {
  CHECK(RadialRule::bergman().mass() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(RadialRule::point_mass().mass() == 1.0);
  CHECK_THROWS_AS(RadialRule({0.5, 1.5}, {1.0, 1.0}), RangeError);
  CHECK_THROWS_AS(RadialRule({0.5}, {-1.0}), RangeError);
}

TEST_CASE("mixed norm of simple functions") {
  const MixedSpec h = mixed_spec_for(Preset::Hardy, 1, 2.0, 2.0);
  CHECK(mixed_norm(h, Polynomial(1)) == 0.0);
  for (int k = 0; k <= 5; ++k) CHECK(mixed_norm(h, Polynomial::monomial(MultiIndex{k})) == doctest::Approx(1.0).epsilon(1e-12));
  const MixedSpec b = mixed_spec_for(Preset::Bergman, 1, 2.0, 2.0);
  CHECK(mixed_norm(b, one() - z()) == doctest::Approx(norm(SpaceSpec::preset(Preset::Bergman, 1), one() - z())).epsilon(1e-10));
  CHECK_THROWS_AS(mixed_spec_for(Preset::DruryArveson, 2, 2.0, 2.0), ArgumentError);
}

TEST_CASE("Hilbert case agrees with the diagonal norm") {
  std::mt19937_64 rng(41);
  for (Preset p : {Preset::Hardy, Preset::Bergman, Preset::DirichletType}) {
    const SpaceSpec s = SpaceSpec::preset(p, 1);
    const MixedSpec m = mixed_spec_for(p, 1, 2.0, 2.0);
    for (int t = 0; t < 5; ++t) {
      const Polynomial f = random_poly(1, 1 + t, rng);
      CHECK(mixed_norm(m, f) == doctest::Approx(norm(s, f)).epsilon(1e-10));
      CHECK(luxemburg_norm(constant_exponent(m, 2.0), f) == doctest::Approx(norm(s, f)).epsilon(1e-10));
    }
  }
}

TEST_CASE("constant term convention for N > 0") {
  MixedSpec m = mixed_spec_for(Preset::DirichletType, 1, 2.0, 2.0);
  CHECK(mixed_norm(m, one() * Complex(3.0)) == doctest::Approx(3.0));
  m.includeConstantTerm = false;
  CHECK(mixed_norm(m, one() * Complex(3.0)) == 0.0);
}

TEST_CASE("modular identities") {
  const MixedSpec m = mixed_spec_for(Preset::Bergman, 1, 3.0, 3.0);
  const VarExpSpec v = constant_exponent(m, 3.0);
  const Polynomial f = one() - z() * Complex(0.5, 0.5);
  const double lp = mixed_norm(m, f);
  CHECK(modular(v, f, lp) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(luxemburg_norm(v, f) == doctest::Approx(lp).epsilon(1e-8));
  CHECK(modular(v, f, 2.0) < modular(v, f, 1.0));
  CHECK(modular(v, Polynomial(1), 0.3) == 0.0);
  CHECK_THROWS_AS(modular(v, f, 0.0), RangeError);
}

TEST_CASE("Luxemburg norm certificate and homogeneity") {
  std::mt19937_64 rng(42);
  VarExpSpec v;
  v.radial = RadialRule::bergman();
  v.N = 1;
  v.exponent = ExponentFamily{1.5, 1.5, 2.0};
  for (int t = 0; t < 5; ++t) {
    const Polynomial f = random_poly(1, 3, rng);
    const double lam = luxemburg_norm(v, f);
    CHECK(std::abs(modular(v, f, lam) - 1.0) <= 1e-6);
    const Complex c(-1.5, 2.0);
    CHECK(luxemburg_norm(v, f * c) == doctest::Approx(std::abs(c) * lam).epsilon(1e-8));
  }
  CHECK(luxemburg_norm(v, Polynomial(1)) == 0.0);
}

TEST_CASE("norm axioms across exponents") {
  std::mt19937_64 rng(43);
  const std::vector<std::pair<double, double>> pq{{1.0, 1.0}, {3.0, 1.5}, {4.0, 2.0}, {1.5, 6.0}};
  for (const auto& [p, q] : pq) {
    const MixedSpec m = mixed_spec_for(Preset::DirichletType, 1, p, q);
    for (int t = 0; t < 3; ++t) {
      const Polynomial f = random_poly(1, 3, rng), g = random_poly(1, 4, rng);
      CHECK(mixed_norm(m, f + g) <= mixed_norm(m, f) + mixed_norm(m, g) + 1e-8);
      CHECK(mixed_norm(m, f * Complex(0.0, -3.0)) == doctest::Approx(3.0 * mixed_norm(m, f)).epsilon(1e-8));
    }
  }
  VarExpSpec v;
  v.radial = RadialRule::bergman();
  v.exponent = ExponentFamily{1.2, 2.0, 1.0};
  for (int t = 0; t < 3; ++t) {
    const Polynomial f = random_poly(1, 3, rng), g = random_poly(1, 2, rng);
    CHECK(luxemburg_norm(v, f + g) <= luxemburg_norm(v, f) + luxemburg_norm(v, g) + 1e-8);
  }
}

TEST_CASE("spec validation") {
  MixedSpec m;
  m.p = 0.5;
  CHECK_THROWS_AS(m.validate(), RangeError);
  MixedSpec m2;
  m2.d = 2;
  CHECK_THROWS_AS(m2.validate(), ArgumentError);
  VarExpSpec v;
  v.exponent = ExponentFamily{1.5, -1.0, 1.0};
  CHECK_THROWS_AS(v.validate(), RangeError);
  v.exponent = ExponentFamily{2.0, 1.0, 0.5};
  CHECK_THROWS_AS(v.validate(), RangeError);
}

TEST_CASE("Monte Carlo angular rule in two variables") {
  const SpaceSpec s = SpaceSpec::preset(Preset::Hardy, 2);
  const MixedSpec m = mixed_spec_for(Preset::Hardy, 2, 2.0, 2.0, 20000, 7);
  const Polynomial f = Polynomial::constant(2, 1.0) - Polynomial::variable(2, 0) * Complex(0.8);
  const MixedNormEstimate e = mixed_norm_estimate(m, f);
  CHECK(e.standardError > 0.0);
  CHECK(std::abs(e.value - norm(s, f)) < 6.0 * e.standardError + 1e-3);
  CHECK(mixed_norm_estimate(m, f).value == e.value);
}

TEST_CASE("mixed index in the Hilbert case") {
  const SpaceSpec h = SpaceSpec::preset(Preset::Hardy, 1);
  const MixedSpec m = mixed_spec_for(Preset::Hardy, 1, 2.0, 2.0);
  const MixedIndexResult r = mixed_index(m, one() - z(), 5);
  CHECK(r.objective == doctest::Approx(std::sqrt(1.0 / 7.0)).epsilon(1e-9));
  CHECK(r.converged);
  CHECK(mixed_index(m, z(), 4).objective == doctest::Approx(1.0).epsilon(1e-10));
  const MixedIndexResult unit = mixed_index(m, one(), 3);
  CHECK(unit.objective < 1e-12);
  CHECK(std::abs(unit.phi.constant_term() - 1.0) < 1e-12);
  const MixedSpec d = mixed_spec_for(Preset::DirichletType, 1, 2.0, 2.0);
  const double hilbert = cyclicity_index(SpaceSpec::preset(Preset::DirichletType, 1), one() - z(), 6).residual;
  CHECK(mixed_index(d, one() - z(), 6).objective == doctest::Approx(hilbert).epsilon(1e-7));
  (void)h;
}

TEST_CASE("mixed index decreases with degree away from p = 2") {
  for (const auto& [p, q] : std::vector<std::pair<double, double>>{{3.0, 3.0}, {1.5, 2.5}}) {
    const MixedSpec m = mixed_spec_for(Preset::Bergman, 1, p, q);
    double prev = std::numeric_limits<double>::infinity();
    for (int n = 0; n <= 6; ++n) {
      const MixedIndexResult r = mixed_index(m, one() - z(), n);
      CHECK(r.converged);
      CHECK(r.objective >= 0.0);
      CHECK(r.objective <= prev + 1e-8);
      // The returned polynomial attains the reported value.
      CHECK(mixed_norm(m, one() - r.phi * (one() - z())) == doctest::Approx(r.objective).epsilon(1e-10));
      prev = r.objective;
    }
  }
}

TEST_CASE("variable-exponent index") {
  VarExpSpec v;
  v.radial = RadialRule::bergman();
  v.exponent = ExponentFamily{1.5, 1.0, 1.0};
  double prev = std::numeric_limits<double>::infinity();
  for (int n = 0; n <= 5; ++n) {
    const MixedIndexResult r = mixed_index(v, one() - z(), n);
    CHECK(r.objective <= prev + 1e-8);
    CHECK(luxemburg_norm(v, one() - r.phi * (one() - z())) == doctest::Approx(r.objective).epsilon(1e-8));
    prev = r.objective;
  }
  CHECK_THROWS_AS(mixed_index(v, Polynomial(1), 2), DegenerateInputError);
}
