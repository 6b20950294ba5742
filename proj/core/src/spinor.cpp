#include "starc/spinor.hpp"

#include <cmath>

namespace starc {

namespace {

constexpr unsigned kEvenMasks[8] = {0u, 3u, 5u, 9u, 6u, 10u, 12u, 15u};

}  // namespace

SpinorRepresentative SpinorRepresentative::from_components(
    const std::array<ScalarField, 8>& comps) {
  return SpinorRepresentative(MultivectorField([comps](const Point& p) {
    Multivector m;
    for (int i = 0; i < 8; ++i) m[kEvenMasks[i]] = comps[i](p);
    return m;
  }));
}

double SpinorRepresentative::odd_leakage(const Point& p) const {
  const Multivector v = psi_(p);
  return norm_max(v - grade_project(v, 0) - grade_project(v, 2) - grade_project(v, 4));
}

Multivector effective_covd(const Connection& conn, const Coframe& frame,
                           const SpinorRepresentative& psi, int a, const Point& p, double step) {
  const Multivector d = pfaff_derivative(psi.field(), frame, a, p, step);
  return d + connection_bivector(conn, a, p) * psi(p) * 0.5;
}

Multivector spin_dirac_operator(const Connection& conn, const Coframe& frame,
                                const SpinorRepresentative& psi, const Point& p, double step) {
  Multivector r;
  for (int a = 0; a < 4; ++a) r += theta(a) * effective_covd(conn, frame, psi, a, p, step);
  return r;
}

Multivector dhe_residual_lorentzian(const Connection& conn, const Coframe& frame,
                                    const SpinorRepresentative& psi, const EmPotential& em,
                                    const Point& p, double step, double torsion_tol) {
  const TorsionTensor T = torsion_components(conn, frame, p, step);
  if (T.max_abs() > torsion_tol)
    throw TorsionPresent("Lorentzian Dirac-Hestenes residual requires a torsion-free connection");
  const Multivector dirac = spin_dirac_operator(conn, frame, psi, p, step);
  const Multivector th21 = theta(2) * theta(1);
  return dirac * th21 - em.A(p) * psi(p) * em.q - psi(p) * theta(0) * em.m;
}

Multivector dhe_residual_riemann_cartan(const Connection& conn, const Coframe& frame,
                                        const SpinorRepresentative& psi, const EmPotential& em,
                                        const Point& p, double step) {
  const Multivector dirac = spin_dirac_operator(conn, frame, psi, p, step);
  const Multivector th21 = theta(2) * theta(1);
  const Multivector th021 = theta(0) * th21;
  const TorsionTensor Tt = torsion_components(conn, frame, p, step);
  const Multivector T = torsion_covector(Tt, frame, p);
  return dirac * th21 + T * psi(p) * th021 * 0.5 - em.A(p) * psi(p) * em.q -
         psi(p) * theta(0) * em.m;
}

double dhe_lagrangian_density(const Connection& conn, const Coframe& frame,
                              const SpinorRepresentative& psi, const EmPotential& em,
                              const Point& p, double step) {
  const double det = tetrad_determinant(frame, p);
  const Multivector dirac = spin_dirac_operator(conn, frame, psi, p, step);
  const Multivector th021 = theta(0) * theta(2) * theta(1);
  const Multivector v = psi(p);
  return (scalar_product(dirac * th021, v) - em.m * scalar_product(v, v)) / det;
}

RotorField RotorField::from_generator(MultivectorField F) {
  RotorField rf([F](const Point& p) { return exp_bivector(F(p)).value(); });
  rf.gen_ = std::move(F);
  rf.has_gen_ = true;
  return rf;
}

MultivectorField conjugate_field(const MultivectorField& X, const RotorField& U) {
  return MultivectorField([X, U](const Point& q) {
    const Multivector u = U.value(q);
    return reversion(u) * X(q) * u;
  });
}

PassiveGauge passive_gauge_transform(const Coframe& frame, const Connection& conn,
                                     const SpinorRepresentative& psi, const RotorField& U,
                                     double step) {
  // Coframe: h'^a_mu = Lambda^a_b h^b_mu.
  std::array<std::array<ScalarField, 4>, 4> h2;
  for (int a = 0; a < 4; ++a)
    for (int mu = 0; mu < 4; ++mu)
      h2[a][mu] = ScalarField([frame, U, a, mu](const Point& q) {
        const Multivector th = sandwich(U.rotor(q), theta(a));
        double v = 0.0;
        for (int b = 0; b < 4; ++b) v += th[1u << b] * frame.h(b, mu, q);
        return v;
      });
  Coframe frame2(std::move(h2));

  // Connection: primed components of omega'_{e'_a} with
  // omega'_V = omega_V + 2 (pfaff_V U) ~U at V = e'_a = (Lambda^-1)^b_a e_b.
  MultivectorField rotor_values = U.value_field();
  Connection conn2([frame, conn, U, rotor_values, step](const Point& q) {
    const Rotor r = U.rotor(q);
    const Multivector u = r.value();
    const Multivector ur = reversion(u);
    // Lambda^a_b and its inverse (Lambda^-1)^b_a = eta_bb Lambda^a_b eta^aa.
    Mat4d lam{};
    for (int a = 0; a < 4; ++a) {
      const Multivector th = sandwich(r, theta(a));
      for (int b = 0; b < 4; ++b) lam[a][b] = th[1u << b];
    }
    std::array<Multivector, 4> omega_p;  // omega'_{e_b}, original directions
    for (int b = 0; b < 4; ++b) {
      const Multivector dU = pfaff_derivative(rotor_values, frame, b, q, step);
      omega_p[b] = connection_bivector(conn, b, q) + dU * ur * 2.0;
    }
    ConnectionValues cv;
    for (int a = 0; a < 4; ++a) {
      // direction e'_a, then conjugate into the primed basis
      Multivector w;
      for (int b = 0; b < 4; ++b) {
        const double lam_inv = metric_sign(b) * lam[a][b] * metric_sign(a);
        if (lam_inv != 0.0) w += omega_p[b] * lam_inv;
      }
      const Multivector wp = ur * w * u;
      for (const auto& [k, l] : kBivectorPairs) {
        const double v = bivector_component(wp, k, l);
        cv.w[a][k][l] = v;
        cv.w[a][l][k] = -v;
      }
    }
    return cv;
  });

  // Spinor: primed components of psi' = psi U^-1 are ~U psi.
  MultivectorField psi_field = psi.field();
  SpinorRepresentative psi2(MultivectorField([psi_field, U](const Point& q) {
    return reversion(U.value(q)) * psi_field(q);
  }));

  return PassiveGauge{std::move(frame2), std::move(conn2), std::move(psi2)};
}

SpinorCommutatorResiduals spinor_commutator_residual(const Connection& conn, const Coframe& frame,
                                                     const SpinorRepresentative& psi, int a, int b,
                                                     const Point& p, double step) {
  SpinorRepresentative cov_b(MultivectorField(
      [&conn, &frame, psi, b, step](const Point& q) { return effective_covd(conn, frame, psi, b, q, step); }));
  SpinorRepresentative cov_a(MultivectorField(
      [&conn, &frame, psi, a, step](const Point& q) { return effective_covd(conn, frame, psi, a, q, step); }));
  const Multivector lhs = effective_covd(conn, frame, cov_b, a, p, step) -
                          effective_covd(conn, frame, cov_a, b, p, step);

  MultivectorField th_a = MultivectorField::constant(theta_lower(a));
  MultivectorField th_b = MultivectorField::constant(theta_lower(b));
  const Multivector curv = curvature_biform(conn, frame, th_a, th_b, p, step);
  const Multivector base = curv * psi(p) * 0.5;

  const TorsionTensor T = torsion_components(conn, frame, p, step);
  const ConnectionValues cv = conn.values(p);
  Multivector sum_eff, sum_cl;
  for (int c = 0; c < 4; ++c) {
    const double coef = T.T[c][a][b] - cv.mixed(c, a, b) + cv.mixed(c, b, a);
    if (coef == 0.0) continue;
    sum_eff += effective_covd(conn, frame, psi, c, p, step) * coef;
    sum_cl += covd_clifford(conn, frame, psi.field(), c, p, step) * coef;
  }
  return {norm_max(lhs - (base - sum_eff)), norm_max(lhs - (base - sum_cl))};
}

}  // namespace starc
