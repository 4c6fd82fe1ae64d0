#include "cyclicity/operators.hpp"

#include <algorithm>
#include <cmath>

namespace cyc {

Eigen::MatrixXcd mult_operator_section(const SpaceSpec& spec, const Polynomial& phi, int nIn, int nOut) {
  if (phi.dim() != spec.dim()) throw ArgumentError("mult_operator_section: dimension mismatch");
  if (nIn < 0) throw ArgumentError("mult_operator_section: nIn must be >= 0");
  const int degPhi = std::max(phi.degree(), 0);
  if (nOut < nIn + degPhi) throw ArgumentError("mult_operator_section: nOut < nIn + deg(phi)");
  if (nOut > spec.max_degree()) throw RangeError("mult_operator_section: nOut exceeds maxDegree");

  const auto rows = static_cast<Eigen::Index>(spec.basis_size(nOut));
  const auto cols = static_cast<Eigen::Index>(spec.basis_size(nIn));
  const Eigen::VectorXd w = spec.weights(nOut);
  const auto& mons = spec.monomials();

  Eigen::MatrixXcd section = Eigen::MatrixXcd::Zero(rows, cols);
  for (Eigen::Index col = 0; col < cols; ++col) {
    const MultiIndex& b = mons[static_cast<std::size_t>(col)];
    for (const auto& [a, c] : phi) {
      const auto row = static_cast<Eigen::Index>(spec.index_of(a + b));
      section(row, col) += c * std::sqrt(w(row) / w(col));
    }
  }
  return section;
}

double top_singular_value(const Eigen::MatrixXcd& a) {
  if (a.size() == 0) return 0.0;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(a);
  return svd.singularValues()(0);
}

MultiplierNormBound multiplier_norm_lower(const SpaceSpec& spec, const Polynomial& phi, int nIn) {
  const int nOut = nIn + std::max(phi.degree(), 0);
  MultiplierNormBound out;
  out.nIn = nIn;
  out.nOut = nOut;
  out.lowerBound = top_singular_value(mult_operator_section(spec, phi, nIn, nOut));
  return out;
}

}  // namespace cyc
