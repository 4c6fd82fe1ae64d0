#pragma once

#include <Eigen/Dense>

#include "cyclicity/poly.hpp"
#include "cyclicity/spaces.hpp"

namespace cyc {

// Finite section of M_phi in the orthonormalized monomial basis:
// entry (a, b) = <phi z^b, z^a> / (||z^a|| ||z^b||) for |a| <= nOut, |b| <= nIn.
// Requires nIn + deg(phi) <= nOut <= spec.max_degree().
Eigen::MatrixXcd mult_operator_section(const SpaceSpec& spec, const Polynomial& phi, int nIn, int nOut);

// Largest singular value of a dense matrix.
double top_singular_value(const Eigen::MatrixXcd& a);

// A finite section only bounds the multiplier norm from below, so the bound is
// always reported together with the section shape.
struct MultiplierNormBound {
  double lowerBound = 0.0;
  int nIn = 0;
  int nOut = 0;
};

MultiplierNormBound multiplier_norm_lower(const SpaceSpec& spec, const Polynomial& phi, int nIn);

}  // namespace cyc
