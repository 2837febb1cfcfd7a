#pragma once

#include "spinrelax/mat3.hpp"

namespace spinrelax::oracle {

// Brute-force eigenvalues of a general complex 3x3 matrix via a generic
// dense eigensolver (Schur iteration under the hood). This is the
// independent side of the dual-route checks; the analysis path never calls
// it. Sorted by (Re, Im) ascending.
std::array<Complex, 3> eigenvalues(const CMat3& m);

// Characteristic coefficients by direct numeric expansion of the entries
// (the independent route to the symbolically built ones).
void char_coeffs_numeric(const CMat3& m, double& c2, double& c1, double& c0);

} // namespace spinrelax::oracle
