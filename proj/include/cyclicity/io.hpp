#pragma once

// JSON encodings of spaces, functions and point clouds.

#include <json.hpp>

#include <string>

#include "cyclicity/capacity.hpp"
#include "cyclicity/freespace.hpp"
#include "cyclicity/mixednorm.hpp"
#include "cyclicity/poly.hpp"
#include "cyclicity/spaces.hpp"

namespace cyc::io {

using json = nlohmann::json;

// Accepts "hardy", "hardy(2)" or an object {kind, d, N, moments | weights, maxDegree, preset}.
// defaultDim applies when a bare preset name carries no dimension.
SpaceSpec space_from_json(const json& j, int defaultDim = 1);
json to_json(const SpaceSpec& spec);

// Accepts a term list [{exponents, re, im}] or a named family
// {"family": "one_minus_z" | "shifted" | "monomial" | "constant", ...}.
Polynomial polynomial_from_json(const json& j, int d);
json to_json(const Polynomial& f);

// Term list [{letters, re, im}] or {"family": "shifted", "c": 2, "letter": 1}.
FreePolynomial free_polynomial_from_json(const json& j, int d);
json to_json(const FreePolynomial& f);

FreeSpaceSpec free_space_from_json(const json& j, int defaultDim);
json to_json(const FreeSpaceSpec& spec);

// Array of coordinate lists (Re z1, Im z1, ...) or a generator
// {"generator": "circle" | "arc" | "sphere_patch", ...}.
BoundaryCloud cloud_from_json(const json& j, int d);
json to_json(const BoundaryCloud& cloud);

RadialRule radial_from_json(const json& j);
json to_json(const RadialRule& rule);
MixedSpec mixed_spec_from_json(const json& j);
json to_json(const MixedSpec& spec);
VarExpSpec var_exp_spec_from_json(const json& j);
json to_json(const VarExpSpec& spec);

Complex complex_from_json(const json& j);
json to_json(Complex z);

// Sorted keys, two-space indentation, trailing newline.
std::string dump_canonical(const json& j);

}  // namespace cyc::io
