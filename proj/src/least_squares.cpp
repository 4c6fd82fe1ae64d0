#include "cyclicity/least_squares.hpp"

#include <cmath>
#include <limits>

#include "cyclicity/errors.hpp"

namespace cyc {

std::string to_string(SolveMethod m) { return m == SolveMethod::Cholesky ? "cholesky" : "qr_fallback"; }

LeastSquaresSolution solve_least_squares(const Eigen::MatrixXcd& design, const Eigen::VectorXcd& target,
                                         double conditionLimit) {
  LeastSquaresSolution out;
  if (design.cols() == 0) {
    out.coefficients.resize(0);
    out.residual = target.norm();
    return out;
  }
  const Eigen::MatrixXcd gram = design.adjoint() * design;
  const Eigen::VectorXcd rhs = design.adjoint() * target;

  Eigen::LLT<Eigen::MatrixXcd> llt(gram);
  double cond = std::numeric_limits<double>::infinity();
  if (llt.info() == Eigen::Success) {
    const double rc = llt.rcond();
    if (rc > 0.0) cond = 1.0 / rc;
  }

  if (std::isfinite(cond) && cond <= conditionLimit) {
    out.coefficients = llt.solve(rhs);
    out.method = SolveMethod::Cholesky;
    out.gramCondition = cond;
  } else {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(design);
    if (qr.rank() < design.cols()) {
      throw ConditioningError("least squares: design matrix is numerically rank deficient");
    }
    out.coefficients = qr.solve(target);
    out.method = SolveMethod::QrFallback;
    const auto diag = qr.matrixQR().diagonal().cwiseAbs();
    const double ratio = diag.maxCoeff() / diag.minCoeff();
    out.gramCondition = ratio * ratio;
  }
  out.residual = (target - design * out.coefficients).norm();
  return out;
}

}  // namespace cyc
