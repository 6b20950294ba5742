#pragma once

// Independent gamma-matrix check of the Dirac-Hestenes residual on flat
// Cartesian charts. Uses the standard Dirac representation
//   gamma^0 = diag(1,1,-1,-1) block form, gamma^k = [[0, sigma_k], [-sigma_k, 0]],
// the primitive idempotent f = 1/2(1+gamma^0) 1/2(1+i gamma^2 gamma^1)
// (the (2,2) matrix unit in this representation), and the column spinor
// |Psi> = column 2 of the matrix image of psi. The matrix equation whose
// residual equals the Clifford residual under these conventions is
//   i gamma^a (d_a - i q A_a) |Psi> + m |Psi> = 0,
// the complex conjugate of the textbook form: with theta^2 theta^1 in the
// Clifford equation and f built on i E^2 E^1, the whole mapping lands in
// the conjugated representation (rest waves go like exp(+imt)).

#include <array>
#include <complex>

#include "starc/spinor.hpp"

namespace starc {

using Complex = std::complex<double>;
using Mat4c = std::array<std::array<Complex, 4>, 4>;
using Col4c = std::array<Complex, 4>;

// Matrix image of a basis blade / a general multivector.
Mat4c gamma_matrix(int a);
Mat4c blade_matrix(unsigned mask);
Mat4c to_matrix(const Multivector& m);

// Column-2 extraction: the ideal column of psi * f.
Col4c spinor_column(const Multivector& psi);

double column_norm(const Col4c& c);

// l2 residual of the matrix Dirac equation for the mapped column field.
// Requires an identity tetrad at p (throws UnsupportedScenario otherwise).
double matrix_dirac_oracle(const SpinorRepresentative& psi, const EmPotential& em,
                           const Coframe& frame, const Point& p, double step);

}  // namespace starc
