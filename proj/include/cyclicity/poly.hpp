#pragma once

// Sparse commutative polynomials over multi-indices.
//
// Coefficients live in a std::map keyed by MultiIndex, whose ordering is the
// graded-lexicographic order shared by every basis in the library: total
// degree ascending, then exponent vectors in descending lexicographic order
// (z1^2, z1 z2, z2^2, ...).

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <compare>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "cyclicity/errors.hpp"

namespace cyc {

using Complex = std::complex<double>;

class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> exponents) : exps_(std::move(exponents)) {
    for (int e : exps_) {
      if (e < 0) throw ArgumentError("MultiIndex: negative exponent");
    }
  }
  MultiIndex(std::initializer_list<int> exponents)
      : MultiIndex(std::vector<int>(exponents)) {}

  static MultiIndex zero(int d) { return MultiIndex(std::vector<int>(d, 0)); }
  static MultiIndex unit(int d, int j) {
    if (j < 0 || j >= d) throw ArgumentError("MultiIndex::unit: variable index out of range");
    std::vector<int> e(d, 0);
    e[j] = 1;
    return MultiIndex(std::move(e));
  }

  int dim() const { return static_cast<int>(exps_.size()); }
  int degree() const { return std::accumulate(exps_.begin(), exps_.end(), 0); }
  int operator[](int j) const { return exps_[j]; }
  const std::vector<int>& exponents() const { return exps_; }
  auto begin() const { return exps_.begin(); }
  auto end() const { return exps_.end(); }

  // Componentwise a <= b.
  bool divides(const MultiIndex& b) const {
    if (b.dim() != dim()) return false;
    for (int j = 0; j < dim(); ++j) {
      if (exps_[j] > b.exps_[j]) return false;
    }
    return true;
  }

  friend MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
    check_dims(a, b);
    std::vector<int> e(a.exps_);
    for (int j = 0; j < a.dim(); ++j) e[j] += b.exps_[j];
    return MultiIndex(std::move(e));
  }

  // Requires a.divides(b) in reverse: returns b - a with b >= a componentwise.
  friend MultiIndex operator-(const MultiIndex& b, const MultiIndex& a) {
    check_dims(a, b);
    if (!a.divides(b)) throw ArgumentError("MultiIndex: negative difference");
    std::vector<int> e(b.exps_);
    for (int j = 0; j < b.dim(); ++j) e[j] -= a.exps_[j];
    return MultiIndex(std::move(e));
  }

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

  friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) {
    if (auto c = a.degree() <=> b.degree(); c != 0) return c;
    if (auto c = a.dim() <=> b.dim(); c != 0) return c;
    // Descending lexicographic within a degree.
    return b.exps_ <=> a.exps_;
  }

 private:
  static void check_dims(const MultiIndex& a, const MultiIndex& b) {
    if (a.dim() != b.dim()) throw ArgumentError("MultiIndex: dimension mismatch");
  }

  std::vector<int> exps_;
};

// All multi-indices in d variables with total degree exactly k, in canonical order.
inline std::vector<MultiIndex> homogeneous_monomials(int d, int k) {
  std::vector<MultiIndex> out;
  std::vector<int> e(d, 0);
  // Recursive fill: first component from k down to 0.
  auto rec = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == d - 1) {
      e[pos] = remaining;
      out.emplace_back(e);
      return;
    }
    for (int v = remaining; v >= 0; --v) {
      e[pos] = v;
      self(self, pos + 1, remaining - v);
    }
  };
  if (d >= 1) rec(rec, 0, k);
  return out;
}

// All multi-indices with total degree <= maxDegree in graded-lex order.
inline std::vector<MultiIndex> graded_monomials(int d, int maxDegree) {
  std::vector<MultiIndex> out;
  for (int k = 0; k <= maxDegree; ++k) {
    auto h = homogeneous_monomials(d, k);
    out.insert(out.end(), h.begin(), h.end());
  }
  return out;
}

// Number of multi-indices in d variables of total degree <= k: C(k+d, d).
inline std::size_t monomial_count(int d, int k) {
  if (k < 0) return 0;
  double c = 1.0;
  for (int j = 1; j <= d; ++j) c = c * (k + j) / j;
  return static_cast<std::size_t>(std::llround(c));
}

template <typename Scalar = Complex>
class BasicPolynomial {
 public:
  using scalar_type = Scalar;
  using map_type = std::map<MultiIndex, Scalar>;

  BasicPolynomial() = default;
  explicit BasicPolynomial(int d) : dim_(d) {
    if (d < 1) throw ArgumentError("Polynomial: dimension must be >= 1");
  }

  static BasicPolynomial constant(int d, Scalar c) {
    BasicPolynomial p(d);
    p.set(MultiIndex::zero(d), c);
    return p;
  }
  static BasicPolynomial monomial(const MultiIndex& a, Scalar c = Scalar(1)) {
    BasicPolynomial p(a.dim());
    p.set(a, c);
    return p;
  }
  // The coordinate function z_j (0-based j).
  static BasicPolynomial variable(int d, int j) { return monomial(MultiIndex::unit(d, j)); }

  int dim() const { return dim_; }
  bool is_zero() const { return coeffs_.empty(); }
  std::size_t size() const { return coeffs_.size(); }
  const map_type& terms() const { return coeffs_; }
  auto begin() const { return coeffs_.begin(); }
  auto end() const { return coeffs_.end(); }

  int degree() const { return coeffs_.empty() ? -1 : coeffs_.rbegin()->first.degree(); }

  Scalar coeff(const MultiIndex& a) const {
    auto it = coeffs_.find(a);
    return it == coeffs_.end() ? Scalar(0) : it->second;
  }
  Scalar constant_term() const { return coeff(MultiIndex::zero(dim_)); }

  // Stores c at a; exact zeros are erased.
  void set(const MultiIndex& a, Scalar c) {
    check_key(a);
    if (c == Scalar(0)) {
      coeffs_.erase(a);
    } else {
      coeffs_[a] = c;
    }
  }
  void add(const MultiIndex& a, Scalar c) {
    check_key(a);
    auto [it, inserted] = coeffs_.try_emplace(a, c);
    if (!inserted) it->second += c;
    if (it->second == Scalar(0)) coeffs_.erase(it);
  }

  // Terms of total degree exactly k.
  BasicPolynomial homogeneous_part(int k) const {
    BasicPolynomial out(dim_);
    for (const auto& [a, c] : coeffs_) {
      if (a.degree() == k) out.coeffs_.emplace_hint(out.coeffs_.end(), a, c);
    }
    return out;
  }
  // Terms of total degree <= k.
  BasicPolynomial truncated(int k) const {
    BasicPolynomial out(dim_);
    for (const auto& [a, c] : coeffs_) {
      if (a.degree() <= k) out.coeffs_.emplace_hint(out.coeffs_.end(), a, c);
    }
    return out;
  }

  BasicPolynomial& operator+=(const BasicPolynomial& q) {
    check_same_dim(q);
    for (const auto& [a, c] : q.coeffs_) add(a, c);
    return *this;
  }
  BasicPolynomial& operator-=(const BasicPolynomial& q) {
    check_same_dim(q);
    for (const auto& [a, c] : q.coeffs_) add(a, -c);
    return *this;
  }
  BasicPolynomial& operator*=(Scalar s) {
    if (s == Scalar(0)) {
      coeffs_.clear();
      return *this;
    }
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
      it->second *= s;
      it = (it->second == Scalar(0)) ? coeffs_.erase(it) : std::next(it);
    }
    return *this;
  }

  friend BasicPolynomial operator+(BasicPolynomial p, const BasicPolynomial& q) { return p += q; }
  friend BasicPolynomial operator-(BasicPolynomial p, const BasicPolynomial& q) { return p -= q; }
  friend BasicPolynomial operator-(BasicPolynomial p) { return p *= Scalar(-1); }
  friend BasicPolynomial operator*(BasicPolynomial p, Scalar s) { return p *= s; }
  friend BasicPolynomial operator*(Scalar s, BasicPolynomial p) { return p *= s; }
  friend BasicPolynomial operator*(const BasicPolynomial& p, const BasicPolynomial& q) {
    return multiply(p, q);
  }

  friend bool operator==(const BasicPolynomial& p, const BasicPolynomial& q) {
    return p.dim_ == q.dim_ && p.coeffs_ == q.coeffs_;
  }

  void check_same_dim(const BasicPolynomial& q) const {
    if (q.dim_ != dim_) throw ArgumentError("Polynomial: dimension mismatch");
  }

 private:
  void check_key(const MultiIndex& a) const {
    if (a.dim() != dim_) throw ArgumentError("Polynomial: multi-index dimension mismatch");
  }

  int dim_ = 1;
  map_type coeffs_;
};

using Polynomial = BasicPolynomial<Complex>;

// Coefficient convolution.
template <typename Scalar>
BasicPolynomial<Scalar> multiply(const BasicPolynomial<Scalar>& p, const BasicPolynomial<Scalar>& q) {
  p.check_same_dim(q);
  BasicPolynomial<Scalar> out(p.dim());
  for (const auto& [a, x] : p) {
    for (const auto& [b, y] : q) out.add(a + b, x * y);
  }
  return out;
}

template <typename Scalar>
BasicPolynomial<Scalar> pow(const BasicPolynomial<Scalar>& p, int k) {
  if (k < 0) throw ArgumentError("pow: negative exponent");
  auto out = BasicPolynomial<Scalar>::constant(p.dim(), Scalar(1));
  for (int i = 0; i < k; ++i) out = multiply(out, p);
  return out;
}

// R^N with R = sum z_j d/dz_j, which scales z^a by |a|.
template <typename Scalar>
BasicPolynomial<Scalar> radial_derivative(const BasicPolynomial<Scalar>& p, int N) {
  if (N < 0) throw ArgumentError("radial_derivative: N must be >= 0");
  BasicPolynomial<Scalar> out(p.dim());
  for (const auto& [a, c] : p) {
    double s = std::pow(static_cast<double>(a.degree()), N);
    out.set(a, c * Scalar(s));
  }
  return out;
}

// d/dz_j.
template <typename Scalar>
BasicPolynomial<Scalar> partial_derivative(const BasicPolynomial<Scalar>& p, int j) {
  BasicPolynomial<Scalar> out(p.dim());
  for (const auto& [a, c] : p) {
    if (a[j] == 0) continue;
    std::vector<int> e = a.exponents();
    const int k = e[j];
    e[j] -= 1;
    out.add(MultiIndex(std::move(e)), c * Scalar(static_cast<double>(k)));
  }
  return out;
}

// Direct monomial sum with cached coordinate powers.
template <typename Scalar, typename Point>
Scalar evaluate(const BasicPolynomial<Scalar>& p, const Point& z) {
  const int d = p.dim();
  if (static_cast<int>(z.size()) != d) throw ArgumentError("evaluate: point dimension mismatch");
  const int deg = std::max(p.degree(), 0);
  std::vector<std::vector<Scalar>> powers(d, std::vector<Scalar>(deg + 1, Scalar(1)));
  for (int j = 0; j < d; ++j) {
    for (int k = 1; k <= deg; ++k) powers[j][k] = powers[j][k - 1] * Scalar(z[j]);
  }
  Scalar sum(0);
  for (const auto& [a, c] : p) {
    Scalar m = c;
    for (int j = 0; j < d; ++j) m *= powers[j][a[j]];
    sum += m;
  }
  return sum;
}

// Truncated series q with deg q <= L and p*q = 1 + O(|z|^{L+1}).
// Solved degree by degree: p0 q_k = -sum_{j=1..k} p_j q_{k-j}.
template <typename Scalar>
BasicPolynomial<Scalar> invert_power_series(const BasicPolynomial<Scalar>& p, int L) {
  if (L < 0) throw ArgumentError("invert_power_series: L must be >= 0");
  const Scalar p0 = p.constant_term();
  if (p0 == Scalar(0)) throw SingularInversionError("invert_power_series: p(0) = 0");
  const int d = p.dim();
  const int degP = p.degree();
  std::vector<BasicPolynomial<Scalar>> pParts, qParts;
  for (int k = 0; k <= std::min(degP, L); ++k) pParts.push_back(p.homogeneous_part(k));
  qParts.push_back(BasicPolynomial<Scalar>::constant(d, Scalar(1) / p0));
  for (int k = 1; k <= L; ++k) {
    BasicPolynomial<Scalar> acc(d);
    for (int j = 1; j <= std::min(k, degP); ++j) acc += multiply(pParts[j], qParts[k - j]);
    acc *= Scalar(-1) / p0;
    qParts.push_back(std::move(acc));
  }
  BasicPolynomial<Scalar> q(d);
  for (auto& part : qParts) q += part;
  return q;
}

}  // namespace cyc
