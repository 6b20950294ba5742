#pragma once

// Active local Lorentz transformations: rotor fields, the induced Lorentz
// matrices, transformed frames and connections, torsion generation, and
// the Maxwell gauge experiment.
//
// Active transformation law:
//   psi' = U psi,  theta'^m = U theta^m ~U = Lambda^m_n theta^n,
//   e'_m = (Lambda^-1)^n_m e_n,
//   omega'_{e_n} = Lambda^m_n (U omega_{e_m} ~U - 2 (pfaff_m U) ~U),
// with components extracted in the original theta-bivector basis.

#include <utility>

#include "starc/spinor.hpp"

namespace starc {

// Lambda^m_n with U theta^m ~U = Lambda^m_n theta^n; validated proper
// orthochronous (Lambda^T eta Lambda = eta, det = +1, Lambda^0_0 >= 1).
Mat4d lambda_from_rotor(const Rotor& U);
Mat4d lambda_from_rotor(const RotorField& U, const Point& p);
Mat4d lambda_inverse(const Mat4d& lam);

struct ActiveFieldValues {
  std::array<Multivector, 4> theta_prime;  // theta'^m as multivectors
  Mat4d e_prime;                           // (Lambda^-1)^n_m, row m, column n
  Multivector psi_prime;                   // U psi
};

ActiveFieldValues transform_fields_active(const RotorField& U, const Coframe& frame,
                                          const SpinorRepresentative& psi, const Point& p);

// The coframe whose frame vectors are the transformed Pfaff directions
// E_n = Lambda^m_n e_m (h entries (Lambda^-1)^a_n h^n_mu). The transformed
// gauge differentiates along these; composing two active transforms, or
// inverting one, must difference the second rotor along the first one's
// gauge coframe.
Coframe gauge_pfaff_coframe(const RotorField& U, const Coframe& frame);

// Components omega'^{kl}_n of the transformed connection in the original
// basis bookkeeping. pfaff_m U is a finite difference of the rotor field
// along pfaff_frame (the fiducial frame for a first transform).
ConnectionValues transform_connection_active(const RotorField& U, const Connection& conn,
                                             const Coframe& frame, const Point& p, double step);
ConnectionValues transform_connection_active(const RotorField& U, const Connection& conn,
                                             const Coframe& frame, const Coframe& pfaff_frame,
                                             const Point& p, double step);
Connection transformed_connection(const RotorField& U, const Connection& conn,
                                  const Coframe& frame, double step);

// T'^r_{nk} = omega'^r_{nk} - omega'^r_{kn} - c^r_{nk}.
TorsionTensor transformed_torsion_direct(const RotorField& U, const Connection& conn,
                                         const Coframe& frame, const Point& p, double step);

// Closed formula for a torsion-free start and an abelian generator
// (pointwise fixed plane, [F, pfaff F] = 0):
//   T'^r_{nk} = (Lambda^-1)^r_p Lambda^m_n Lambda^b_k c^p_{mb} - c^r_{nk}
//               - 2 pfaff_m(F^{rs}) [eta_{sk} Lambda^m_n - eta_{sn} Lambda^m_k].
// Throws TorsionPresent / NonAbelianGenerator when the preconditions fail.
TorsionTensor transformed_torsion_formula(const RotorField& U, const Connection& conn,
                                          const Coframe& frame, const Point& p, double step);

// Residual of the homogeneous curvature transformation law
//   R'(theta'_a ^ theta'_b) = U R(theta_a ^ theta_b) ~U,
// max over the six index pairs. The left side is the curvature of the
// transformed structure, evaluated over the gauge Pfaff coframe; the label
// mixing built into the stored components unwinds the theta' arguments.
double curvature_gauge_covariance_residual(const RotorField& U, const Connection& conn,
                                           const Coframe& frame, const Point& p, double step);

// Generalized-connection contract: max over directions n of
//   | covd'_s_{e_n}(U psi) - Lambda^m_n U covd_s_{e_m} psi |.
double generalized_connection_residual(const RotorField& U, const Connection& conn,
                                       const Coframe& frame, const SpinorRepresentative& psi,
                                       const Point& p, double step);

// Dirac(F) - J for a Levi-Civita connection (throws TorsionPresent).
Multivector maxwell_residual(const Connection& conn, const Coframe& frame,
                             const MultivectorField& F, const MultivectorField& J, const Point& p,
                             double step, double torsion_tol = 1e-6);

// The four pointwise numbers of the Maxwell gauge experiment:
//   action_invariance  |F.F - F'.F'|          (~0)
//   original_residual  |Dirac F - J|          (~0 for a solution)
//   naive_residual     |Dirac F' - J'|        (generally not 0)
//   repaired_residual  |U Dirac(~U F' U) ~U - J'|  (~0 by construction)
// with F' = U F ~U, J' = U J ~U.
struct MaxwellGaugePoint {
  double action_invariance = 0.0;
  double original_residual = 0.0;
  double naive_residual = 0.0;
  double repaired_residual = 0.0;
};

MaxwellGaugePoint maxwell_gauge_point(const RotorField& U, const Connection& conn,
                                      const Coframe& frame, const MultivectorField& F,
                                      const MultivectorField& J, const Point& p, double step);

}  // namespace starc
