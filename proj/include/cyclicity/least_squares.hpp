#pragma once

#include <Eigen/Dense>

#include <string>

namespace cyc {

enum class SolveMethod { Cholesky, QrFallback };

std::string to_string(SolveMethod m);

struct LeastSquaresSolution {
  Eigen::VectorXcd coefficients;
  double residual = 0.0;        // ||target - design * x||
  double gramCondition = 1.0;   // condition number estimate of design^H design
  SolveMethod method = SolveMethod::Cholesky;
};

// Condition number past which the normal equations are abandoned for QR.
inline constexpr double kGramConditionLimit = 1e10;

// min_x ||target - design x||_2 through the normal equations, with a
// column-pivoting QR fallback when the Gram matrix is ill-conditioned.
// Throws ConditioningError when the design is numerically rank deficient.
LeastSquaresSolution solve_least_squares(const Eigen::MatrixXcd& design, const Eigen::VectorXcd& target,
                                         double conditionLimit = kGramConditionLimit);

}  // namespace cyc
