#pragma once

// Representatives of Dirac-Hestenes spinor fields: even Clifford fields
// with the one-sided effective covariant derivative
//   covd_s_a psi = pfaff_a psi + 1/2 omega_{e_a} psi,
// the spin-Dirac operator theta^a covd_s_a, residuals of the
// Dirac-Hestenes equation on Lorentzian and Riemann-Cartan backgrounds,
// the Lagrangian density, and passive gauge transformations.

#include <utility>

#include "starc/connection.hpp"

namespace starc {

class SpinorRepresentative {
 public:
  SpinorRepresentative() = default;
  explicit SpinorRepresentative(MultivectorField psi) : psi_(std::move(psi)) {}
  // 8 even components in blade order 1, 01, 02, 03, 12, 13, 23, 0123.
  static SpinorRepresentative from_components(const std::array<ScalarField, 8>& comps);

  Multivector operator()(const Point& p) const { return psi_(p); }
  const MultivectorField& field() const { return psi_; }
  // Largest odd-grade coefficient at p; the evenness invariant.
  double odd_leakage(const Point& p) const;

 private:
  MultivectorField psi_;
};

struct EmPotential {
  MultivectorField A;  // grade-1
  double q = 0.0;
  double m = 0.0;
};

Multivector effective_covd(const Connection& conn, const Coframe& frame,
                           const SpinorRepresentative& psi, int a, const Point& p, double step);

Multivector spin_dirac_operator(const Connection& conn, const Coframe& frame,
                                const SpinorRepresentative& psi, const Point& p, double step);

// theta^a covd_s_a psi theta^2 theta^1 - q A psi - m psi theta^0.
// Requires a torsion-free connection (checked; throws TorsionPresent).
Multivector dhe_residual_lorentzian(const Connection& conn, const Coframe& frame,
                                    const SpinorRepresentative& psi, const EmPotential& em,
                                    const Point& p, double step, double torsion_tol = 1e-6);

// Riemann-Cartan form, with the torsion covector term:
// Dirac(psi) theta^2 theta^1 + 1/2 T psi theta^0 theta^2 theta^1
//   - q A psi - m psi theta^0.
// Collapses to the Lorentzian residual when T = 0.
Multivector dhe_residual_riemann_cartan(const Connection& conn, const Coframe& frame,
                                        const SpinorRepresentative& psi, const EmPotential& em,
                                        const Point& p, double step);

// L = [ (Dirac_s psi theta^0 theta^2 theta^1) . psi - m psi . psi ] / det(h).
double dhe_lagrangian_density(const Connection& conn, const Coframe& frame,
                              const SpinorRepresentative& psi, const EmPotential& em,
                              const Point& p, double step);

// A rotor-valued field over the chart.
class RotorField {
 public:
  RotorField() : fn_([](const Point&) { return Multivector::scalar(1.0); }) {}
  // U(p) = exp(F(p)) for a grade-2 generator field F.
  static RotorField from_generator(MultivectorField F);
  static RotorField constant(const Rotor& r) {
    const Multivector v = r.value();
    return RotorField([v](const Point&) { return v; });
  }

  Rotor rotor(const Point& p) const { return Rotor(fn_(p), 1e-8); }
  Multivector value(const Point& p) const { return fn_(p); }
  // The rotor values as a plain multivector field (for differentiation).
  MultivectorField value_field() const { return MultivectorField(fn_); }
  // Generator field when built from one (empty otherwise).
  const MultivectorField& generator() const { return gen_; }
  bool has_generator() const { return has_gen_; }

 private:
  explicit RotorField(std::function<Multivector(const Point&)> fn) : fn_(std::move(fn)) {}
  std::function<Multivector(const Point&)> fn_;
  MultivectorField gen_;
  bool has_gen_ = false;
};

// Change of spin coframe. The returned data are the transformed fields in
// their own (primed) component basis, so the standard evaluators above
// compute the primed-gauge quantities directly:
//   coframe:    h'^a_mu = Lambda^a_b h^b_mu
//   spinor:     components of ~U psi   (psi' = psi U^-1 in the primed basis)
//   connection: components of ~U omega'_{e'_a} U with
//               omega'_V = omega_V + 2 (pfaff_V U) ~U
//   clifford fields (e.g. the EM potential): components of ~U X U.
struct PassiveGauge {
  Coframe frame;
  Connection conn;
  SpinorRepresentative psi;
};

PassiveGauge passive_gauge_transform(const Coframe& frame, const Connection& conn,
                                     const SpinorRepresentative& psi, const RotorField& U,
                                     double step);

// Primed-basis components of a Clifford field: ~U X U.
MultivectorField conjugate_field(const MultivectorField& X, const RotorField& U);

// Both variants of the spinor commutator identity residual
//   [covd_s_a, covd_s_b] psi = 1/2 R(theta_a ^ theta_b) psi
//     - (T^c_{ab} - omega^c_{ab} + omega^c_{ba}) D_c psi
// with D_c = covd_s (effective) and D_c = Clifford covd respectively.
struct SpinorCommutatorResiduals {
  double effective = 0.0;
  double clifford = 0.0;
};
SpinorCommutatorResiduals spinor_commutator_residual(const Connection& conn, const Coframe& frame,
                                                     const SpinorRepresentative& psi, int a, int b,
                                                     const Point& p, double step);

}  // namespace starc
