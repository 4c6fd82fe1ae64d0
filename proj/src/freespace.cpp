#include "cyclicity/freespace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace cyc {

std::size_t word_count(int d, int maxLength) {
  std::size_t total = 0, power = 1;
  for (int k = 0; k <= maxLength; ++k) {
    total += power;
    power *= static_cast<std::size_t>(d);
  }
  return total;
}

std::vector<Word> enumerate_words(int d, int maxLength) {
  std::vector<Word> out;
  out.reserve(word_count(d, maxLength));
  out.emplace_back();
  std::size_t levelStart = 0;
  for (int k = 1; k <= maxLength; ++k) {
    const std::size_t levelEnd = out.size();
    for (std::size_t i = levelStart; i < levelEnd; ++i) {
      for (int l = 1; l <= d; ++l) {
        std::vector<int> letters = out[i].letters();
        letters.push_back(l);
        out.emplace_back(std::move(letters));
      }
    }
    levelStart = levelEnd;
  }
  return out;
}

namespace {

// Position of w in enumerate_words order.
std::size_t word_index(const Word& w, int d) {
  std::size_t rank = 0;
  for (int l : w) rank = rank * static_cast<std::size_t>(d) + static_cast<std::size_t>(l - 1);
  return word_count(d, w.length() - 1) + rank;
}

}  // namespace

Polynomial abelianize(const FreePolynomial& F) {
  const int d = F.dim();
  Polynomial out(d);
  for (const auto& [w, c] : F) {
    std::vector<int> counts(static_cast<std::size_t>(d), 0);
    for (int l : w) ++counts[static_cast<std::size_t>(l - 1)];
    out.add(MultiIndex(std::move(counts)), c);
  }
  return out;
}

FreeSpaceSpec FreeSpaceSpec::free_hardy(int d, int maxLength) {
  return free_besov(d, 0.0, maxLength);
}

FreeSpaceSpec FreeSpaceSpec::free_besov(int d, double s, int maxLength) {
  if (d < 1) throw ArgumentError("FreeSpaceSpec: d must be >= 1");
  if (maxLength < 0) throw ArgumentError("FreeSpaceSpec: maxLength must be >= 0");
  if (!(s >= 0.0)) throw ArgumentError("FreeSpaceSpec: s must be >= 0");
  FreeSpaceSpec spec;
  spec.d_ = d;
  spec.s_ = s;
  spec.kind_ = s == 0.0 ? FreeWeightKind::FreeHardy : FreeWeightKind::FreeBesov;
  spec.omega_.resize(static_cast<std::size_t>(maxLength) + 1);
  for (int k = 0; k <= maxLength; ++k) spec.omega_[static_cast<std::size_t>(k)] = std::pow(k + 1.0, 2.0 * s);
  return spec;
}

FreeSpaceSpec FreeSpaceSpec::custom(int d, std::vector<double> lengthWeights) {
  if (d < 1) throw ArgumentError("FreeSpaceSpec: d must be >= 1");
  if (lengthWeights.empty()) throw ArgumentError("FreeSpaceSpec: empty weight table");
  for (double w : lengthWeights) {
    if (!(w > 0.0) || !std::isfinite(w)) throw ArgumentError("FreeSpaceSpec: weights must be positive");
  }
  FreeSpaceSpec spec;
  spec.d_ = d;
  spec.kind_ = FreeWeightKind::Custom;
  spec.omega_ = std::move(lengthWeights);
  return spec;
}

double FreeSpaceSpec::length_weight(int k) const {
  if (k < 0 || k > max_length()) throw RangeError("FreeSpaceSpec: word length exceeds maxLength");
  return omega_[static_cast<std::size_t>(k)];
}

double free_norm(const FreeSpaceSpec& spec, const FreePolynomial& F) {
  if (F.dim() != spec.dim()) throw ArgumentError("free_norm: dimension mismatch");
  double sum = 0.0;
  for (const auto& [w, c] : F) sum += spec.length_weight(w.length()) * std::norm(c);
  return std::sqrt(sum);
}

FreeApproximantResult free_subspace_distance(const FreeSpaceSpec& spec, const FreePolynomial& g,
                                             const FreePolynomial& G, int n) {
  const int d = spec.dim();
  if (G.dim() != d || g.dim() != d) throw ArgumentError("free_subspace_distance: dimension mismatch");
  if (G.is_zero()) throw DegenerateInputError("free_subspace_distance: G = 0");
  if (n < 0) throw ArgumentError("free_subspace_distance: n must be >= 0");
  const int top = std::max(n + G.max_length(), g.max_length());
  if (top > spec.max_length()) throw RangeError("free_subspace_distance: length budget exceeds maxLength");

  const auto rows = static_cast<Eigen::Index>(word_count(d, top));
  const std::vector<Word> basis = enumerate_words(d, n);
  const auto cols = static_cast<Eigen::Index>(basis.size());
  Eigen::VectorXd sqrtW(rows);
  {
    Eigen::Index i = 0;
    for (int k = 0; k <= top; ++k) {
      const auto levelSize = static_cast<Eigen::Index>(word_count(d, k) - (k == 0 ? 0 : word_count(d, k - 1)));
      sqrtW.segment(i, levelSize).setConstant(std::sqrt(spec.length_weight(k)));
      i += levelSize;
    }
  }

  Eigen::MatrixXcd design = Eigen::MatrixXcd::Zero(rows, cols);
  for (Eigen::Index col = 0; col < cols; ++col) {
    const Word& v = basis[static_cast<std::size_t>(col)];
    for (const auto& [u, b] : G) {
      const auto row = static_cast<Eigen::Index>(word_index(v + u, d));
      design(row, col) += b * sqrtW(row);
    }
  }
  Eigen::VectorXcd target = Eigen::VectorXcd::Zero(rows);
  for (const auto& [w, c] : g) {
    const auto row = static_cast<Eigen::Index>(word_index(w, d));
    target(row) = c * sqrtW(row);
  }

  const LeastSquaresSolution sol = solve_least_squares(design, target);
  FreeApproximantResult out;
  out.n = n;
  out.phi = FreePolynomial(d);
  for (Eigen::Index i = 0; i < cols; ++i) out.phi.set(basis[static_cast<std::size_t>(i)], sol.coefficients(i));
  out.residual = sol.residual;
  out.gramCondition = sol.gramCondition;
  out.solveMethod = sol.method;
  out.targetNormSq = target.squaredNorm();
  const Complex bx = (design.adjoint() * target).dot(sol.coefficients);
  out.normalEquationResidualSq = std::max(0.0, out.targetNormSq - bx.real());
  return out;
}

Eigen::MatrixXcd free_mult_operator_section(const FreeSpaceSpec& spec, const FreePolynomial& phi, int nIn, int nOut) {
  const int d = spec.dim();
  if (phi.dim() != d) throw ArgumentError("free_mult_operator_section: dimension mismatch");
  if (nIn < 0 || nOut < nIn + std::max(phi.max_length(), 0)) {
    throw ArgumentError("free_mult_operator_section: need nOut >= nIn + max word length");
  }
  if (nOut > spec.max_length()) throw RangeError("free_mult_operator_section: nOut exceeds maxLength");
  const std::vector<Word> cols = enumerate_words(d, nIn);
  Eigen::MatrixXcd section = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(word_count(d, nOut)),
                                                    static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    const Word& v = cols[j];
    const double wv = spec.length_weight(v.length());
    for (const auto& [u, c] : phi) {
      const Word w = u + v;
      section(static_cast<Eigen::Index>(word_index(w, d)), static_cast<Eigen::Index>(j)) +=
          c * std::sqrt(spec.length_weight(w.length()) / wv);
    }
  }
  return section;
}

Eigen::MatrixXcd evaluate_on_tuple(const FreePolynomial& F, const MatrixTuple& Z) {
  if (static_cast<int>(Z.size()) != F.dim()) throw ArgumentError("evaluate_on_tuple: tuple size must equal d");
  const Eigen::Index m = Z.front().rows();
  for (const auto& z : Z) {
    if (z.rows() != m || z.cols() != m) throw ArgumentError("evaluate_on_tuple: matrices must be square and equal size");
  }
  std::map<Word, Eigen::MatrixXcd> products;
  products.emplace(Word{}, Eigen::MatrixXcd::Identity(m, m));
  auto power = [&](auto&& self, const Word& w) -> const Eigen::MatrixXcd& {
    if (auto it = products.find(w); it != products.end()) return it->second;
    std::vector<int> prefix(w.letters().begin(), w.letters().end() - 1);
    Eigen::MatrixXcd p = self(self, Word(std::move(prefix))) * Z[static_cast<std::size_t>(w.letters().back() - 1)];
    return products.emplace(w, std::move(p)).first->second;
  };
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(m, m);
  for (const auto& [w, c] : F) sum += c * power(power, w);
  return sum;
}

double row_norm(const MatrixTuple& Z) {
  if (Z.empty()) return 0.0;
  const Eigen::Index m = Z.front().rows();
  Eigen::MatrixXcd row(m, m * static_cast<Eigen::Index>(Z.size()));
  for (std::size_t j = 0; j < Z.size(); ++j) row.middleCols(static_cast<Eigen::Index>(j) * m, m) = Z[j];
  return top_singular_value(row);
}

MatrixTuple sample_row_contraction(int d, int size, double rho, std::uint64_t seed) {
  if (d < 1 || size < 1) throw ArgumentError("sample_row_contraction: d and size must be >= 1");
  if (!(rho >= 0.0) || rho >= 1.0) throw ArgumentError("sample_row_contraction: rho must lie in [0, 1)");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  MatrixTuple Z(static_cast<std::size_t>(d), Eigen::MatrixXcd(size, size));
  for (auto& z : Z) {
    for (Eigen::Index j = 0; j < size; ++j) {
      for (Eigen::Index i = 0; i < size; ++i) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        z(i, j) = Complex(re, im);
      }
    }
  }
  const double scale = rho / row_norm(Z);
  for (auto& z : Z) z *= scale;
  return Z;
}

CompressionReport compression_check(const FreeSpaceSpec& freeSpec, const SpaceSpec& commSpec,
                                    const FreePolynomial& G, int n) {
  if (freeSpec.kind() != FreeWeightKind::FreeHardy) throw ArgumentError("compression_check: free space must be free Hardy");
  if (commSpec.law() != WeightLaw::DruryArveson) throw ArgumentError("compression_check: target must be Drury-Arveson");
  if (freeSpec.dim() != commSpec.dim()) throw ArgumentError("compression_check: dimension mismatch");
  const int d = freeSpec.dim();
  CompressionReport rep;
  rep.n = n;
  rep.freeResidual = free_subspace_distance(freeSpec, FreePolynomial::identity(d), G, n).residual;
  const Polynomial image = abelianize(G);
  // A vanishing image leaves only phi * 0 = 0, at distance ||1|| from 1.
  rep.commutativeResidual = image.is_zero() ? 1.0 : cyclicity_index(commSpec, image, n).residual;
  rep.slack = rep.freeResidual - rep.commutativeResidual;
  rep.holds = rep.slack >= -1e-10;
  return rep;
}

FreeCoronaReport free_corona_check(const FreePolynomial& psi, double rho, int samples, int size, std::uint64_t seed,
                                   const std::vector<int>& lengths, int nIn) {
  if (samples < 1) throw ArgumentError("free_corona_check: samples must be >= 1");
  if (lengths.empty()) throw ArgumentError("free_corona_check: need at least one truncation length");
  const int d = psi.dim();
  FreeCoronaReport rep;
  rep.rho = rho;
  rep.samples = samples;
  rep.size = size;
  rep.minSingularValue = std::numeric_limits<double>::infinity();
  std::mt19937_64 seeds(seed);
  for (int s = 0; s < samples; ++s) {
    const MatrixTuple Z = sample_row_contraction(d, size, rho, seeds());
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(evaluate_on_tuple(psi, Z));
    rep.minSingularValue = std::min(rep.minSingularValue, svd.singularValues().minCoeff());
  }

  double tail = 0.0;
  for (const auto& [w, c] : psi) {
    if (!w.empty()) tail += std::abs(c);
  }
  const double denom = std::abs(psi.constant_term()) - rho * std::sqrt(static_cast<double>(d)) * tail;
  rep.envelope = denom > 0.0 ? 1.0 / denom : std::numeric_limits<double>::infinity();

  const int maxL = *std::max_element(lengths.begin(), lengths.end());
  const FreeSpaceSpec hardy = FreeSpaceSpec::free_hardy(d, nIn + maxL);
  for (int L : lengths) {
    const FreePolynomial theta = free_invert(psi, L);
    rep.lengths.push_back(L);
    rep.sectionNorms.push_back(
        top_singular_value(free_mult_operator_section(hardy, theta, nIn, nIn + std::max(theta.max_length(), 0))));
  }
  if (rep.sectionNorms.size() >= 2) {
    const auto k = rep.sectionNorms.size();
    rep.stabilized = std::abs(rep.sectionNorms[k - 1] - rep.sectionNorms[k - 2]) < 1e-3;
  }
  return rep;
}

}  // namespace cyc
