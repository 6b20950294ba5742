#pragma once

// Riemann-Cartan connections over an orthonormal coframe.
//
// The stored primitive is omega_a^{bc} (direction a, bivector pair (b,c),
// antisymmetric in (b,c)); every other index pattern is produced by one
// conversion rule, raising/lowering with eta:
//   omega^r_{nk} = omega_n^{rs} eta_{sk}
// The connection bivector is omega_{e_a} = 1/2 omega_a^{bc} theta_b ^ theta_c
// and covariant differentiation of Clifford fields is
//   covd_a A = pfaff_a A + 1/2 [omega_{e_a}, A].

#include <array>
#include <functional>
#include <utility>

#include "starc/algebra.hpp"
#include "starc/field.hpp"

namespace starc {

// Primitive components omega_a^{bc} at one point; [a][b][c], antisym in (b,c).
struct ConnectionValues {
  std::array<std::array<std::array<double, 4>, 4>, 4> w{};

  double upper(int a, int b, int c) const { return w[a][b][c]; }
  // omega^r_{nk} = omega_n^{rs} eta_{sk}
  double mixed(int r, int n, int k) const { return w[n][r][k] * metric_sign(k); }
  // connection matrix in direction c: M^a_b = omega^a_{cb}
  double matrix(int a, int b, int c) const { return mixed(a, c, b); }
};

class Connection {
 public:
  Connection() : fn_([](const Point&) { return ConnectionValues{}; }) {}
  explicit Connection(std::function<ConnectionValues(const Point&)> fn) : fn_(std::move(fn)) {}

  static Connection zero() { return Connection(); }
  static Connection constant(const ConnectionValues& v) {
    return Connection([v](const Point&) { return v; });
  }
  // One scalar field per direction and unordered pair, pair order
  // (01,02,03,12,13,23); the antisymmetric partner is implied.
  static Connection from_component_fields(std::array<std::array<ScalarField, 6>, 4> fields);
  // The unique metric-compatible torsion-free connection of the coframe,
  // omega_{apb} = 1/2 (c_{pab} + c_{bpa} - c_{abp}) in all-lowered indices.
  static Connection levi_civita(const Coframe& frame, double step);

  ConnectionValues values(const Point& p) const { return fn_(p); }

 private:
  std::function<ConnectionValues(const Point&)> fn_;
};

// Unordered pair order used by 6-component storage.
inline constexpr std::array<std::pair<int, int>, 6> kBivectorPairs{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

// T^c_{ab} = omega^c_{ab} - omega^c_{ba} - c^c_{ab}; [c][a][b].
struct TorsionTensor {
  std::array<std::array<std::array<double, 4>, 4>, 4> T{};
  double max_abs() const;
};

// R[c][d][a][b]: value pair (c upper, d lower), form pair (a,b).
struct CurvatureTensor {
  std::array<std::array<std::array<std::array<double, 4>, 4>, 4>, 4> R{};
  double max_abs() const;
};

using Mat4d = std::array<std::array<double, 4>, 4>;

// Component X^{kl} of a bivector X = 1/2 X^{kl} theta_k theta_l.
double bivector_component(const Multivector& X, int k, int l);

// omega_{e_a}(p) as a grade-2 multivector.
Multivector connection_bivector(const Connection& conn, int a, const Point& p);

// nabla_{e_a} A = pfaff_a A + 1/2 [omega_{e_a}, A]; grade-preserving.
Multivector covd_clifford(const Connection& conn, const Coframe& frame,
                          const MultivectorField& A, int a, const Point& p, double step);

// Pointwise Levi-Civita solve (zero torsion + metric compatibility).
ConnectionValues levi_civita_from_coframe(const Coframe& frame, const Point& p, double step);

// Dirac operator: theta^a nabla_{e_a} A.
Multivector dirac_operator(const Connection& conn, const Coframe& frame,
                           const MultivectorField& A, const Point& p, double step);

// Lie bracket of 1-form fields as the metric dual of the vector-field
// bracket; reproduces [[theta_a, theta_b]] = c^d_{ab} theta_d.
Multivector form_lie_bracket(const Coframe& frame, const MultivectorField& u,
                             const MultivectorField& v, const Point& p, double step);

// Torsion operator tau(u^v) = (u.D)v - (v.D)u - [u,v]; grade-1 result.
// Throws NotAVector unless u(p), v(p) are pure grade 1.
Multivector torsion_operator(const Connection& conn, const Coframe& frame,
                             const MultivectorField& u, const MultivectorField& v, const Point& p,
                             double step);

TorsionTensor torsion_components(const Connection& conn, const Coframe& frame, const Point& p,
                                 double step);

// T = T^b_{ab} theta^a.
Multivector torsion_covector(const TorsionTensor& T, const Coframe& frame, const Point& p);

// Curvature biform R(u^v) = du(omega_v) - dv(omega_u) + 1/2[omega_u,omega_v]
// - omega_{[u,v]}; grade-2, antisymmetric in (u,v).
Multivector curvature_biform(const Connection& conn, const Coframe& frame,
                             const MultivectorField& u, const MultivectorField& v, const Point& p,
                             double step);

// R[c][d][a][b] = e_a(M_b)^c_d - e_b(M_a)^c_d + [M_a, M_b]^c_d
//                 - c^k_{ab} (M_k)^c_d, with (M_a)^c_d = omega^c_{ad}.
CurvatureTensor riemann_components(const Connection& conn, const Coframe& frame, const Point& p,
                                   double step);

// max-norm of [nabla_a, nabla_b] t - (R(theta_a^theta_b) _| t
//   - (T^c_{ab} - omega^c_{ab} + omega^c_{ba}) nabla_c t).
double commutator_identity_residual(const Connection& conn, const Coframe& frame,
                                    const MultivectorField& t, int a, int b, const Point& p,
                                    double step);

// Theta^a = d theta^a + omega^a_b ^ theta^b, coordinate components
// Theta^a_{mu nu}; relates to the tensor by Theta^a(e_b, e_c) = T^a_{bc}.
Mat4d cartan_torsion_2form(const Connection& conn, const Coframe& frame, int a, const Point& p,
                           double step);

// Omega^a_b = d omega^a_b + omega^a_c ^ omega^c_b, coordinate components.
Mat4d cartan_curvature_2form(const Connection& conn, const Coframe& frame, int a, int b,
                             const Point& p, double step);

// (first, second) Bianchi residuals:
//   first:  max | d Theta^a + omega^a_b ^ Theta^b - Omega^a_b ^ theta^b |
//   second: max | D_rho Omega_{mu nu} + cyclic |, D_rho = d_rho + [omega_rho, .]
std::pair<double, double> bianchi_residuals(const Connection& conn, const Coframe& frame,
                                            const Point& p, double step);

// max |omega_{acb} + omega_{bca}| over all indices (metric compatibility).
double metric_compatibility_residual(const Connection& conn, const Coframe& frame, const Point& p,
                                     double step);
// Same check on raw omega_a^{bc} values (used to detect injected
// symmetric perturbations that the storage scheme cannot represent).
double metric_compatibility_residual(const std::array<std::array<std::array<double, 4>, 4>, 4>& w);

}  // namespace starc
