#pragma once

// Free (non-commuting) power series indexed by words over d letters.
//
// Words are ordered length first, then lexicographically; that order is the
// basis order of every matrix built here.

#include <Eigen/Dense>

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <vector>

#include "cyclicity/cyclicity.hpp"
#include "cyclicity/poly.hpp"
#include "cyclicity/spaces.hpp"

namespace cyc {

class Word {
 public:
  Word() = default;  // the unit word
  explicit Word(std::vector<int> letters) : letters_(std::move(letters)) {}
  Word(std::initializer_list<int> letters) : letters_(letters) {}

  int length() const { return static_cast<int>(letters_.size()); }
  bool empty() const { return letters_.empty(); }
  int operator[](int i) const { return letters_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& letters() const { return letters_; }
  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }

  friend Word operator+(const Word& u, const Word& v) {
    std::vector<int> w(u.letters_);
    w.insert(w.end(), v.letters_.begin(), v.letters_.end());
    return Word(std::move(w));
  }
  friend bool operator==(const Word&, const Word&) = default;
  friend std::strong_ordering operator<=>(const Word& u, const Word& v) {
    if (auto c = u.length() <=> v.length(); c != 0) return c;
    return u.letters_ <=> v.letters_;
  }

 private:
  std::vector<int> letters_;  // values in 1..d
};

// All words over {1..d} of length <= maxLength in basis order.
std::vector<Word> enumerate_words(int d, int maxLength);
std::size_t word_count(int d, int maxLength);

template <typename Scalar = Complex>
class BasicFreePolynomial {
 public:
  using scalar_type = Scalar;

  BasicFreePolynomial() = default;
  explicit BasicFreePolynomial(int d) : dim_(d) {
    if (d < 1) throw ArgumentError("FreePolynomial: dimension must be >= 1");
  }
  static BasicFreePolynomial identity(int d, Scalar c = Scalar(1)) {
    BasicFreePolynomial p(d);
    p.set(Word{}, c);
    return p;
  }
  static BasicFreePolynomial word(int d, const Word& w, Scalar c = Scalar(1)) {
    BasicFreePolynomial p(d);
    p.set(w, c);
    return p;
  }
  // Z_j for 1-based letter j.
  static BasicFreePolynomial variable(int d, int j) { return word(d, Word{j}); }

  int dim() const { return dim_; }
  bool is_zero() const { return coeffs_.empty(); }
  std::size_t size() const { return coeffs_.size(); }
  auto begin() const { return coeffs_.begin(); }
  auto end() const { return coeffs_.end(); }
  int max_length() const { return coeffs_.empty() ? -1 : coeffs_.rbegin()->first.length(); }

  Scalar coeff(const Word& w) const {
    auto it = coeffs_.find(w);
    return it == coeffs_.end() ? Scalar(0) : it->second;
  }
  Scalar constant_term() const { return coeff(Word{}); }

  void set(const Word& w, Scalar c) {
    check_word(w);
    if (c == Scalar(0)) coeffs_.erase(w);
    else coeffs_[w] = c;
  }
  void add(const Word& w, Scalar c) {
    check_word(w);
    auto [it, inserted] = coeffs_.try_emplace(w, c);
    if (!inserted) it->second += c;
    if (it->second == Scalar(0)) coeffs_.erase(it);
  }

  BasicFreePolynomial truncated(int length) const {
    BasicFreePolynomial out(dim_);
    for (const auto& [w, c] : coeffs_) {
      if (w.length() <= length) out.coeffs_.emplace_hint(out.coeffs_.end(), w, c);
    }
    return out;
  }
  BasicFreePolynomial length_part(int length) const {
    BasicFreePolynomial out(dim_);
    for (const auto& [w, c] : coeffs_) {
      if (w.length() == length) out.coeffs_.emplace_hint(out.coeffs_.end(), w, c);
    }
    return out;
  }

  BasicFreePolynomial& operator+=(const BasicFreePolynomial& q) {
    check_same_dim(q);
    for (const auto& [w, c] : q.coeffs_) add(w, c);
    return *this;
  }
  BasicFreePolynomial& operator-=(const BasicFreePolynomial& q) {
    check_same_dim(q);
    for (const auto& [w, c] : q.coeffs_) add(w, -c);
    return *this;
  }
  BasicFreePolynomial& operator*=(Scalar s) {
    if (s == Scalar(0)) {
      coeffs_.clear();
      return *this;
    }
    for (auto& [w, c] : coeffs_) c *= s;
    return *this;
  }
  friend BasicFreePolynomial operator+(BasicFreePolynomial p, const BasicFreePolynomial& q) { return p += q; }
  friend BasicFreePolynomial operator-(BasicFreePolynomial p, const BasicFreePolynomial& q) { return p -= q; }
  friend BasicFreePolynomial operator*(BasicFreePolynomial p, Scalar s) { return p *= s; }
  friend BasicFreePolynomial operator*(Scalar s, BasicFreePolynomial p) { return p *= s; }
  friend BasicFreePolynomial operator*(const BasicFreePolynomial& p, const BasicFreePolynomial& q) {
    return free_multiply(p, q);
  }
  friend bool operator==(const BasicFreePolynomial& p, const BasicFreePolynomial& q) {
    return p.dim_ == q.dim_ && p.coeffs_ == q.coeffs_;
  }

  void check_same_dim(const BasicFreePolynomial& q) const {
    if (q.dim_ != dim_) throw ArgumentError("FreePolynomial: dimension mismatch");
  }

 private:
  void check_word(const Word& w) const {
    for (int l : w) {
      if (l < 1 || l > dim_) throw ArgumentError("FreePolynomial: letter out of range");
    }
  }

  int dim_ = 1;
  std::map<Word, Scalar> coeffs_;
};

using FreePolynomial = BasicFreePolynomial<Complex>;

// Concatenation convolution: coefficient of w is sum over uv = w of a_u b_v.
template <typename Scalar>
BasicFreePolynomial<Scalar> free_multiply(const BasicFreePolynomial<Scalar>& F, const BasicFreePolynomial<Scalar>& G) {
  F.check_same_dim(G);
  BasicFreePolynomial<Scalar> out(F.dim());
  for (const auto& [u, a] : F) {
    for (const auto& [v, b] : G) out.add(u + v, a * b);
  }
  return out;
}

// Theta supported on words of length <= L with Psi * Theta = I + (words longer than L).
template <typename Scalar>
BasicFreePolynomial<Scalar> free_invert(const BasicFreePolynomial<Scalar>& psi, int L) {
  if (L < 0) throw ArgumentError("free_invert: L must be >= 0");
  const Scalar a0 = psi.constant_term();
  if (a0 == Scalar(0)) throw SingularInversionError("free_invert: constant coefficient is zero");
  const int d = psi.dim();
  const int top = psi.max_length();
  std::vector<BasicFreePolynomial<Scalar>> psiParts, parts;
  for (int k = 0; k <= std::min(top, L); ++k) psiParts.push_back(psi.length_part(k));
  parts.push_back(BasicFreePolynomial<Scalar>::identity(d, Scalar(1) / a0));
  for (int k = 1; k <= L; ++k) {
    BasicFreePolynomial<Scalar> acc(d);
    for (int j = 1; j <= std::min(k, top); ++j) acc += free_multiply(psiParts[static_cast<std::size_t>(j)], parts[static_cast<std::size_t>(k - j)]);
    acc *= Scalar(-1) / a0;
    parts.push_back(std::move(acc));
  }
  BasicFreePolynomial<Scalar> theta(d);
  for (auto& p : parts) theta += p;
  return theta;
}

// Letter-counting map Z^w -> z^{count(w)}.
Polynomial abelianize(const FreePolynomial& F);

enum class FreeWeightKind { FreeHardy, FreeBesov, Custom };

class FreeSpaceSpec {
 public:
  static constexpr int kDefaultMaxLength = 8;

  static FreeSpaceSpec free_hardy(int d, int maxLength = kDefaultMaxLength);
  // omega(k) = (k + 1)^{2s}
  static FreeSpaceSpec free_besov(int d, double s, int maxLength = kDefaultMaxLength);
  static FreeSpaceSpec custom(int d, std::vector<double> lengthWeights);

  int dim() const { return d_; }
  int max_length() const { return static_cast<int>(omega_.size()) - 1; }
  FreeWeightKind kind() const { return kind_; }
  double smoothness() const { return s_; }
  double length_weight(int k) const;
  const std::vector<double>& length_weights() const { return omega_; }

 private:
  FreeSpaceSpec() = default;
  int d_ = 1;
  FreeWeightKind kind_ = FreeWeightKind::FreeHardy;
  double s_ = 0.0;
  std::vector<double> omega_;
};

double free_norm(const FreeSpaceSpec& spec, const FreePolynomial& F);

using FreeApproximantResult = BasicApproximant<FreePolynomial>;

// min of ||g - Phi G|| over Phi supported on words of length <= n.
FreeApproximantResult free_subspace_distance(const FreeSpaceSpec& spec, const FreePolynomial& g,
                                             const FreePolynomial& G, int n);

// Section of left multiplication F -> Phi F on the normalized word basis,
// columns |v| <= nIn, rows |w| <= nOut.
Eigen::MatrixXcd free_mult_operator_section(const FreeSpaceSpec& spec, const FreePolynomial& phi, int nIn, int nOut);

using MatrixTuple = std::vector<Eigen::MatrixXcd>;

// Sum a_w Z^w with Z^{(i1..ik)} = Z_{i1} ... Z_{ik} and the empty word mapped to I.
Eigen::MatrixXcd evaluate_on_tuple(const FreePolynomial& F, const MatrixTuple& Z);

// Complex Gaussian d-tuple scaled so ||[Z_1 ... Z_d]|| = rho.
MatrixTuple sample_row_contraction(int d, int size, double rho, std::uint64_t seed);

// Operator norm of the row block [Z_1 ... Z_d].
double row_norm(const MatrixTuple& Z);

struct CompressionReport {
  int n = 0;
  double freeResidual = 0.0;
  double commutativeResidual = 0.0;
  double slack = 0.0;  // freeResidual - commutativeResidual
  bool holds = false;
};

// Free index of G in the free Hardy space against the Drury-Arveson index of
// its abelianization, both at degree budget n.
CompressionReport compression_check(const FreeSpaceSpec& freeSpec, const SpaceSpec& commSpec,
                                    const FreePolynomial& G, int n);

struct FreeCoronaReport {
  double rho = 0.0;
  int samples = 0;
  int size = 0;
  double minSingularValue = 0.0;   // min over samples of sigma_min(Psi(Z))
  std::vector<int> lengths;        // truncation lengths L of free_invert
  std::vector<double> sectionNorms;
  double envelope = 0.0;           // 1 / (|a_0| - rho sqrt(d) sum_{w != 0} |a_w|) when positive
  bool stabilized = false;         // last two section norms differ by < 1e-3
};

FreeCoronaReport free_corona_check(const FreePolynomial& psi, double rho, int samples, int size, std::uint64_t seed,
                                   const std::vector<int>& lengths, int nIn);

}  // namespace cyc
