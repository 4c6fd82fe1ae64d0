#pragma once

// Radially weighted Besov spaces and the Drury-Arveson space in diagonal form.
//
// Every space here has the monomials as an orthogonal basis, so a space is
// fully described by the squared monomial norms c_a = ||z^a||^2. For a radial
// measure d(omega) = d(mu)(r) d(sigma)(w) with moments m[j] = int r^j d(mu),
//
//   c_a = |a|^{2N} m[2|a|] s(d, a)     (|a| > 0)
//   c_0 = m[0]
//
// where s(d, a) is the sphere moment of |w^a|^2 under normalized surface
// measure (sigma of the whole sphere is 1).

#include <Eigen/Dense>

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cyclicity/poly.hpp"

namespace cyc {

class MomentSequence {
 public:
  MomentSequence() = default;
  // Validates positivity and monotonicity (tolerance 1e-15 relative).
  explicit MomentSequence(std::vector<double> m);

  std::size_t size() const { return m_.size(); }
  double operator[](std::size_t j) const { return m_[j]; }
  const std::vector<double>& values() const { return m_; }

 private:
  std::vector<double> m_;
};

enum class WeightLaw { DiagonalBesov, DruryArveson, CustomDiagonal };

enum class Preset { Hardy, Bergman, DirichletType, DruryArveson };

std::string to_string(Preset p);
Preset parse_preset(std::string_view name);

// (d-1)! a! / (d-1+|a|)!, the integral of |w^a|^2 over the unit sphere of C^d.
double sphere_moment(int d, const MultiIndex& a);

// a! / |a|!, the reciprocal multinomial coefficient.
double inverse_multinomial(const MultiIndex& a);

class SpaceSpec {
 public:
  static constexpr int kDefaultMaxDegree1D = 64;
  static constexpr int kDefaultMaxDegreeND = 20;

  static int default_max_degree(int d) { return d == 1 ? kDefaultMaxDegree1D : kDefaultMaxDegreeND; }

  // Moments must cover indices 0..2*maxDegree.
  static SpaceSpec diagonal_besov(int d, int N, MomentSequence moments,
                                  std::optional<int> maxDegree = std::nullopt);
  static SpaceSpec drury_arveson(int d, std::optional<int> maxDegree = std::nullopt);
  // Must supply a positive weight for every multi-index of degree <= maxDegree.
  static SpaceSpec custom_diagonal(int d, const std::map<MultiIndex, double>& weights, int maxDegree);
  static SpaceSpec preset(Preset p, int d, std::optional<int> maxDegree = std::nullopt);

  int dim() const { return d_; }
  int derivative_order() const { return N_; }
  int max_degree() const { return maxDegree_; }
  WeightLaw law() const { return law_; }
  std::optional<Preset> preset_name() const { return preset_; }
  const MomentSequence& moments() const { return tables_->moments; }
  bool has_moments() const { return law_ == WeightLaw::DiagonalBesov; }

  // Canonical basis z^a, |a| <= maxDegree, in graded-lex order.
  const std::vector<MultiIndex>& monomials() const { return tables_->monomials; }
  // Number of basis monomials with degree <= k (k <= maxDegree).
  std::size_t basis_size(int k) const;
  // Position of a in monomials(); RangeError if |a| > maxDegree.
  std::size_t index_of(const MultiIndex& a) const;

  double monomial_norm_sq(const MultiIndex& a) const;
  // Diagonal weights c_a for |a| <= k in canonical order.
  Eigen::VectorXd weights(int k) const;

  // Coefficients of f in the canonical basis up to degree k (k >= deg f).
  Eigen::VectorXcd coefficients(const Polynomial& f, int k) const;
  Polynomial from_coefficients(const Eigen::VectorXcd& v) const;

 private:
  struct Tables {
    MomentSequence moments;
    std::vector<MultiIndex> monomials;
    std::map<MultiIndex, std::size_t> index;
    std::vector<double> weights;
  };

  SpaceSpec() = default;
  void build(const std::map<MultiIndex, double>* custom);

  int d_ = 1;
  int N_ = 0;
  int maxDegree_ = 0;
  WeightLaw law_ = WeightLaw::DiagonalBesov;
  std::optional<Preset> preset_;
  std::shared_ptr<Tables> tables_;
};

// Closed-form moment sequences for the presets, indices 0..count-1.
MomentSequence hardy_moments(std::size_t count);
MomentSequence bergman_moments(std::size_t count);

Complex inner_product(const SpaceSpec& spec, const Polynomial& f, const Polynomial& g);
double norm_sq(const SpaceSpec& spec, const Polynomial& f);
double norm(const SpaceSpec& spec, const Polynomial& f);

}  // namespace cyc
