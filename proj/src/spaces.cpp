#include "cyclicity/spaces.hpp"

#include <algorithm>
#include <cmath>

namespace cyc {

MomentSequence::MomentSequence(std::vector<double> m) : m_(std::move(m)) {
  if (m_.empty()) throw ArgumentError("MomentSequence: empty");
  for (std::size_t j = 0; j < m_.size(); ++j) {
    if (!(m_[j] > 0.0) || !std::isfinite(m_[j])) {
      throw ArgumentError("MomentSequence: moments must be positive and finite");
    }
    if (j > 0 && m_[j] > m_[j - 1] * (1.0 + 1e-15)) {
      throw ArgumentError("MomentSequence: moments must be nonincreasing");
    }
  }
}

std::string to_string(Preset p) {
  switch (p) {
    case Preset::Hardy: return "hardy";
    case Preset::Bergman: return "bergman";
    case Preset::DirichletType: return "dirichlet_type";
    case Preset::DruryArveson: return "drury_arveson";
  }
  return "unknown";
}

Preset parse_preset(std::string_view name) {
  if (name == "hardy") return Preset::Hardy;
  if (name == "bergman") return Preset::Bergman;
  if (name == "dirichlet_type") return Preset::DirichletType;
  if (name == "drury_arveson") return Preset::DruryArveson;
  throw ArgumentError("unknown preset: " + std::string(name));
}

namespace {

// n! / (k_1! ... k_m!) with sum k = n, as a product of binomials.
double multinomial(const std::vector<int>& parts) {
  double result = 1.0;
  int running = 0;
  for (int k : parts) {
    // multiply by C(running + k, k)
    double binom = 1.0;
    for (int i = 1; i <= k; ++i) {
      binom = binom * (running + i) / i;
      if (binom < 9.0e15) binom = std::round(binom);  // exact integer range
    }
    result *= binom;
    running += k;
  }
  return result;
}

}  // namespace

double inverse_multinomial(const MultiIndex& a) { return 1.0 / multinomial(a.exponents()); }

double sphere_moment(int d, const MultiIndex& a) {
  if (d < 1) throw ArgumentError("sphere_moment: d must be >= 1");
  if (a.dim() != d) throw ArgumentError("sphere_moment: multi-index has wrong number of components");
  std::vector<int> parts = a.exponents();
  parts.push_back(d - 1);
  return 1.0 / multinomial(parts);
}

MomentSequence hardy_moments(std::size_t count) { return MomentSequence(std::vector<double>(count, 1.0)); }

MomentSequence bergman_moments(std::size_t count) {
  std::vector<double> m(count);
  for (std::size_t j = 0; j < count; ++j) m[j] = 2.0 / (static_cast<double>(j) + 2.0);
  return MomentSequence(std::move(m));
}

SpaceSpec SpaceSpec::diagonal_besov(int d, int N, MomentSequence moments, std::optional<int> maxDegree) {
  if (d < 1) throw ArgumentError("SpaceSpec: d must be >= 1");
  if (N < 0) throw ArgumentError("SpaceSpec: N must be >= 0");
  SpaceSpec s;
  s.d_ = d;
  s.N_ = N;
  s.maxDegree_ = maxDegree.value_or(default_max_degree(d));
  if (s.maxDegree_ < 0) throw ArgumentError("SpaceSpec: maxDegree must be >= 0");
  if (moments.size() < static_cast<std::size_t>(2 * s.maxDegree_ + 1)) {
    throw ArgumentError("SpaceSpec: moment sequence must cover indices 0..2*maxDegree");
  }
  s.law_ = WeightLaw::DiagonalBesov;
  s.tables_ = std::make_shared<Tables>();
  s.tables_->moments = std::move(moments);
  s.build(nullptr);
  return s;
}

SpaceSpec SpaceSpec::drury_arveson(int d, std::optional<int> maxDegree) {
  if (d < 1) throw ArgumentError("SpaceSpec: d must be >= 1");
  SpaceSpec s;
  s.d_ = d;
  s.maxDegree_ = maxDegree.value_or(default_max_degree(d));
  if (s.maxDegree_ < 0) throw ArgumentError("SpaceSpec: maxDegree must be >= 0");
  s.law_ = WeightLaw::DruryArveson;
  s.preset_ = Preset::DruryArveson;
  s.tables_ = std::make_shared<Tables>();
  s.build(nullptr);
  return s;
}

SpaceSpec SpaceSpec::custom_diagonal(int d, const std::map<MultiIndex, double>& weights, int maxDegree) {
  if (d < 1) throw ArgumentError("SpaceSpec: d must be >= 1");
  if (maxDegree < 0) throw ArgumentError("SpaceSpec: maxDegree must be >= 0");
  SpaceSpec s;
  s.d_ = d;
  s.maxDegree_ = maxDegree;
  s.law_ = WeightLaw::CustomDiagonal;
  s.tables_ = std::make_shared<Tables>();
  s.build(&weights);
  return s;
}

SpaceSpec SpaceSpec::preset(Preset p, int d, std::optional<int> maxDegree) {
  const int deg = maxDegree.value_or(default_max_degree(d));
  const auto count = static_cast<std::size_t>(2 * std::max(deg, 0) + 1);
  SpaceSpec s;
  switch (p) {
    case Preset::Hardy: s = diagonal_besov(d, 0, hardy_moments(count), deg); break;
    case Preset::Bergman: s = diagonal_besov(d, 0, bergman_moments(count), deg); break;
    case Preset::DirichletType: s = diagonal_besov(d, 1, bergman_moments(count), deg); break;
    case Preset::DruryArveson: return drury_arveson(d, deg);
  }
  s.preset_ = p;
  return s;
}

void SpaceSpec::build(const std::map<MultiIndex, double>* custom) {
  auto& t = *tables_;
  t.monomials = graded_monomials(d_, maxDegree_);
  t.weights.resize(t.monomials.size());
  for (std::size_t i = 0; i < t.monomials.size(); ++i) {
    const MultiIndex& a = t.monomials[i];
    t.index.emplace_hint(t.index.end(), a, i);
    const int k = a.degree();
    double c = 0.0;
    switch (law_) {
      case WeightLaw::DruryArveson: c = inverse_multinomial(a); break;
      case WeightLaw::DiagonalBesov:
        c = k == 0 ? t.moments[0]
                   : std::pow(static_cast<double>(k), 2 * N_) * t.moments[2 * k] * sphere_moment(d_, a);
        break;
      case WeightLaw::CustomDiagonal: {
        auto it = custom->find(a);
        if (it == custom->end()) throw ArgumentError("SpaceSpec: custom weights missing a multi-index");
        c = it->second;
        break;
      }
    }
    if (!(c > 0.0) || !std::isfinite(c)) throw ArgumentError("SpaceSpec: monomial weight must be positive");
    t.weights[i] = c;
  }
}

std::size_t SpaceSpec::basis_size(int k) const {
  if (k > maxDegree_) throw RangeError("SpaceSpec: degree " + std::to_string(k) + " exceeds maxDegree");
  return monomial_count(d_, k);
}

std::size_t SpaceSpec::index_of(const MultiIndex& a) const {
  if (a.dim() != d_) throw ArgumentError("SpaceSpec: multi-index dimension mismatch");
  auto it = tables_->index.find(a);
  if (it == tables_->index.end()) {
    throw RangeError("SpaceSpec: degree " + std::to_string(a.degree()) + " exceeds maxDegree");
  }
  return it->second;
}

double SpaceSpec::monomial_norm_sq(const MultiIndex& a) const { return tables_->weights[index_of(a)]; }

Eigen::VectorXd SpaceSpec::weights(int k) const {
  const auto n = static_cast<Eigen::Index>(basis_size(k));
  return Eigen::Map<const Eigen::VectorXd>(tables_->weights.data(), n);
}

Eigen::VectorXcd SpaceSpec::coefficients(const Polynomial& f, int k) const {
  if (f.dim() != d_) throw ArgumentError("SpaceSpec: polynomial dimension mismatch");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis_size(k)));
  for (const auto& [a, c] : f) {
    if (a.degree() > k) throw RangeError("SpaceSpec: polynomial degree exceeds requested range");
    v(static_cast<Eigen::Index>(index_of(a))) = c;
  }
  return v;
}

Polynomial SpaceSpec::from_coefficients(const Eigen::VectorXcd& v) const {
  Polynomial p(d_);
  const auto& mons = tables_->monomials;
  if (static_cast<std::size_t>(v.size()) > mons.size()) throw RangeError("SpaceSpec: coefficient vector too long");
  for (Eigen::Index i = 0; i < v.size(); ++i) p.set(mons[static_cast<std::size_t>(i)], v(i));
  return p;
}

Complex inner_product(const SpaceSpec& spec, const Polynomial& f, const Polynomial& g) {
  if (f.dim() != spec.dim() || g.dim() != spec.dim()) throw ArgumentError("inner_product: dimension mismatch");
  Complex sum(0.0);
  for (const auto& [a, c] : f) {
    const Complex h = g.coeff(a);
    if (h != Complex(0.0)) sum += spec.monomial_norm_sq(a) * c * std::conj(h);
    else spec.index_of(a);  // range check
  }
  for (const auto& [a, c] : g) spec.index_of(a);
  return sum;
}

double norm_sq(const SpaceSpec& spec, const Polynomial& f) {
  if (f.dim() != spec.dim()) throw ArgumentError("norm: dimension mismatch");
  double sum = 0.0;
  for (const auto& [a, c] : f) sum += spec.monomial_norm_sq(a) * std::norm(c);
  return sum;
}

double norm(const SpaceSpec& spec, const Polynomial& f) { return std::sqrt(norm_sq(spec, f)); }

}  // namespace cyc
