#include "starc/gauge.hpp"

#include <cmath>

namespace starc {

namespace {

void validate_lorentz(const Mat4d& lam) {
  // Lambda^T eta Lambda = eta
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double v = 0.0;
      for (int m = 0; m < 4; ++m) v += lam[m][i] * metric_sign(m) * lam[m][j];
      const double want = (i == j) ? metric_sign(i) : 0.0;
      if (std::abs(v - want) > 1e-10) throw NotARotor("induced matrix is not Lorentz");
    }
  // det = +1 by cofactor expansion
  double det = 0.0;
  for (int j = 0; j < 4; ++j) {
    double minor[3][3];
    for (int r = 1; r < 4; ++r) {
      int cc = 0;
      for (int c = 0; c < 4; ++c) {
        if (c == j) continue;
        minor[r - 1][cc++] = lam[r][c];
      }
    }
    const double m3 = minor[0][0] * (minor[1][1] * minor[2][2] - minor[1][2] * minor[2][1]) -
                      minor[0][1] * (minor[1][0] * minor[2][2] - minor[1][2] * minor[2][0]) +
                      minor[0][2] * (minor[1][0] * minor[2][1] - minor[1][1] * minor[2][0]);
    det += ((j % 2 == 0) ? 1.0 : -1.0) * lam[0][j] * m3;
  }
  if (std::abs(det - 1.0) > 1e-8) throw NotARotor("induced matrix is not proper (det != 1)");
  if (lam[0][0] < 1.0 - 1e-10) throw NotARotor("induced matrix is not orthochronous");
}

// F^{rs} components of a bivector.
Mat4d bivector_components(const Multivector& F) {
  Mat4d f{};
  for (const auto& [r, s] : kBivectorPairs) {
    const double v = bivector_component(F, r, s);
    f[r][s] = v;
    f[s][r] = -v;
  }
  return f;
}

}  // namespace

Mat4d lambda_from_rotor(const Rotor& U) {
  Mat4d lam{};
  for (int m = 0; m < 4; ++m) {
    const Multivector th = sandwich(U, theta(m));
    for (int n = 0; n < 4; ++n) lam[m][n] = th[1u << n];
  }
  validate_lorentz(lam);
  return lam;
}

Mat4d lambda_from_rotor(const RotorField& U, const Point& p) {
  return lambda_from_rotor(U.rotor(p));
}

Mat4d lambda_inverse(const Mat4d& lam) {
  // (Lambda^-1)^n_m = eta^{nn} Lambda^m_n eta_{mm}
  Mat4d inv{};
  for (int n = 0; n < 4; ++n)
    for (int m = 0; m < 4; ++m) inv[n][m] = metric_sign(n) * lam[m][n] * metric_sign(m);
  return inv;
}

ActiveFieldValues transform_fields_active(const RotorField& U, const Coframe& /*frame*/,
                                          const SpinorRepresentative& psi, const Point& p) {
  const Rotor r = U.rotor(p);
  ActiveFieldValues out;
  for (int m = 0; m < 4; ++m) out.theta_prime[m] = sandwich(r, theta(m));
  out.e_prime = lambda_inverse(lambda_from_rotor(r));
  out.psi_prime = r.value() * psi(p);
  return out;
}

Coframe gauge_pfaff_coframe(const RotorField& U, const Coframe& frame) {
  std::array<std::array<ScalarField, 4>, 4> h;
  for (int a = 0; a < 4; ++a)
    for (int mu = 0; mu < 4; ++mu)
      h[a][mu] = ScalarField([U, frame, a, mu](const Point& q) {
        const Mat4d inv = lambda_inverse(lambda_from_rotor(U, q));
        double v = 0.0;
        for (int n = 0; n < 4; ++n) v += inv[a][n] * frame.h(n, mu, q);
        return v;
      });
  return Coframe(std::move(h));
}

ConnectionValues transform_connection_active(const RotorField& U, const Connection& conn,
                                             const Coframe& frame, const Point& p, double step) {
  return transform_connection_active(U, conn, frame, frame, p, step);
}

ConnectionValues transform_connection_active(const RotorField& U, const Connection& conn,
                                             const Coframe& /*frame*/, const Coframe& pfaff_frame,
                                             const Point& p, double step) {
  // components land on the original frame's direction labels; only the
  // rotor differencing runs along pfaff_frame
  const Rotor r = U.rotor(p);
  const Multivector u = r.value();
  const Multivector ur = reversion(u);
  const Mat4d lam = lambda_from_rotor(r);
  const MultivectorField rotor_values = U.value_field();

  std::array<Multivector, 4> base;  // U omega_{e_m} ~U - 2 (pfaff_m U) ~U
  for (int m = 0; m < 4; ++m) {
    const Multivector dU = pfaff_derivative(rotor_values, pfaff_frame, m, p, step);
    base[m] = u * connection_bivector(conn, m, p) * ur - dU * ur * 2.0;
  }

  ConnectionValues cv;
  for (int n = 0; n < 4; ++n) {
    Multivector w;
    for (int m = 0; m < 4; ++m)
      if (lam[m][n] != 0.0) w += base[m] * lam[m][n];
    for (const auto& [k, l] : kBivectorPairs) {
      const double v = bivector_component(w, k, l);
      cv.w[n][k][l] = v;
      cv.w[n][l][k] = -v;
    }
  }
  return cv;
}

Connection transformed_connection(const RotorField& U, const Connection& conn,
                                  const Coframe& frame, double step) {
  return Connection([U, conn, frame, step](const Point& q) {
    return transform_connection_active(U, conn, frame, q, step);
  });
}

TorsionTensor transformed_torsion_direct(const RotorField& U, const Connection& conn,
                                         const Coframe& frame, const Point& p, double step) {
  const Connection conn2 = transformed_connection(U, conn, frame, step);
  return torsion_components(conn2, frame, p, step);
}

TorsionTensor transformed_torsion_formula(const RotorField& U, const Connection& conn,
                                          const Coframe& frame, const Point& p, double step) {
  const TorsionTensor T0 = torsion_components(conn, frame, p, step);
  if (T0.max_abs() > 1e-6)
    throw TorsionPresent("closed torsion formula requires a torsion-free start");
  if (!U.has_generator())
    throw NonAbelianGenerator("closed torsion formula requires a generator field");

  const MultivectorField& F = U.generator();
  const Multivector Fp = F(p);
  std::array<Mat4d, 4> dF;  // dF[m] = pfaff_m F^{rs}
  for (int m = 0; m < 4; ++m) {
    const Multivector d = pfaff_derivative(F, frame, m, p, step);
    if (norm_max(commutator(Fp, d)) > 1e-10)
      throw NonAbelianGenerator("generator does not commute with its derivative");
    dF[m] = bivector_components(d);
  }

  const Mat4d lam = lambda_from_rotor(U, p);
  const Mat4d lam_inv = lambda_inverse(lam);
  const StructureCoefficients sc = structure_coefficients(frame, p, step);

  TorsionTensor out;
  for (int rr = 0; rr < 4; ++rr)
    for (int n = 0; n < 4; ++n)
      for (int k = 0; k < 4; ++k) {
        double v = -sc(rr, n, k);
        for (int pp = 0; pp < 4; ++pp)
          for (int m = 0; m < 4; ++m)
            for (int b = 0; b < 4; ++b)
              v += lam_inv[rr][pp] * lam[m][n] * lam[b][k] * sc(pp, m, b);
        for (int m = 0; m < 4; ++m)
          for (int s = 0; s < 4; ++s) {
            const double e_sk = (s == k) ? metric_sign(s) : 0.0;
            const double e_sn = (s == n) ? metric_sign(s) : 0.0;
            if (e_sk == 0.0 && e_sn == 0.0) continue;
            v -= 2.0 * dF[m][rr][s] * (e_sk * lam[m][n] - e_sn * lam[m][k]);
          }
        out.T[rr][n][k] = v;
      }
  return out;
}

double curvature_gauge_covariance_residual(const RotorField& U, const Connection& conn,
                                           const Coframe& frame, const Point& p, double step) {
  const Connection conn2 = transformed_connection(U, conn, frame, step);
  const Coframe gauge_frame = gauge_pfaff_coframe(U, frame);
  const Rotor r = U.rotor(p);
  double worst = 0.0;
  for (const auto& [a, b] : kBivectorPairs) {
    MultivectorField th_a = MultivectorField::constant(theta_lower(a));
    MultivectorField th_b = MultivectorField::constant(theta_lower(b));
    const Multivector lhs = curvature_biform(conn2, gauge_frame, th_a, th_b, p, step);
    const Multivector rhs = sandwich(r, curvature_biform(conn, frame, th_a, th_b, p, step));
    worst = std::max(worst, norm_max(lhs - rhs));
  }
  return worst;
}

double generalized_connection_residual(const RotorField& U, const Connection& conn,
                                       const Coframe& frame, const SpinorRepresentative& psi,
                                       const Point& p, double step) {
  const MultivectorField psi_field = psi.field();
  MultivectorField chi([U, psi_field](const Point& q) { return U.value(q) * psi_field(q); });
  const ConnectionValues cv2 = transform_connection_active(U, conn, frame, p, step);
  const Mat4d lam = lambda_from_rotor(U, p);
  const Multivector u = U.value(p);

  double worst = 0.0;
  for (int n = 0; n < 4; ++n) {
    Multivector lhs;
    for (int m = 0; m < 4; ++m)
      if (lam[m][n] != 0.0) lhs += pfaff_derivative(chi, frame, m, p, step) * lam[m][n];
    Multivector w2;
    for (const auto& [k, l] : kBivectorPairs)
      w2 += exterior_product(theta_lower(k), theta_lower(l)) * cv2.w[n][k][l];
    lhs += w2 * chi(p) * 0.5;

    Multivector rhs;
    for (int m = 0; m < 4; ++m)
      if (lam[m][n] != 0.0) rhs += u * effective_covd(conn, frame, psi, m, p, step) * lam[m][n];
    worst = std::max(worst, norm_max(lhs - rhs));
  }
  return worst;
}

Multivector maxwell_residual(const Connection& conn, const Coframe& frame,
                             const MultivectorField& F, const MultivectorField& J, const Point& p,
                             double step, double torsion_tol) {
  const TorsionTensor T = torsion_components(conn, frame, p, step);
  if (T.max_abs() > torsion_tol)
    throw TorsionPresent("Maxwell residual requires a Levi-Civita connection");
  return dirac_operator(conn, frame, F, p, step) - J(p);
}

MaxwellGaugePoint maxwell_gauge_point(const RotorField& U, const Connection& conn,
                                      const Coframe& frame, const MultivectorField& F,
                                      const MultivectorField& J, const Point& p, double step) {
  MultivectorField F_prime([U, F](const Point& q) {
    const Multivector u = U.value(q);
    return u * F(q) * reversion(u);
  });
  MultivectorField J_prime([U, J](const Point& q) {
    const Multivector u = U.value(q);
    return u * J(q) * reversion(u);
  });
  MultivectorField F_back([U, F_prime](const Point& q) {
    const Multivector u = U.value(q);
    return reversion(u) * F_prime(q) * u;
  });

  const Rotor r = U.rotor(p);
  MaxwellGaugePoint out;
  out.action_invariance =
      std::abs(scalar_product(F(p), F(p)) - scalar_product(F_prime(p), F_prime(p)));
  out.original_residual = norm_max(dirac_operator(conn, frame, F, p, step) - J(p));
  out.naive_residual = norm_max(dirac_operator(conn, frame, F_prime, p, step) - J_prime(p));
  out.repaired_residual = norm_max(
      sandwich(r, dirac_operator(conn, frame, F_back, p, step)) - J_prime(p));
  return out;
}

}  // namespace starc
