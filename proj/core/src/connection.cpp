#include "starc/connection.hpp"

#include <cmath>

namespace starc {

namespace {

// Components u^a = u . theta^a of a grade-1 multivector.
std::array<double, 4> vector_components_upper(const Multivector& u) {
  std::array<double, 4> c;
  for (int a = 0; a < 4; ++a) c[a] = metric_sign(a) * u[1u << a];
  return c;
}

void require_vector(const Multivector& u, const char* who) {
  if (!is_grade(u, 1, 1e-10)) throw NotAVector(std::string(who) + " must be a pure 1-vector");
}

// omega applied to the 1-form value w at p: w^a omega_{e_a}.
Multivector apply_connection(const ConnectionValues& cv, const Multivector& w) {
  Multivector r;
  const auto wc = vector_components_upper(w);
  for (int a = 0; a < 4; ++a) {
    if (wc[a] == 0.0) continue;
    for (const auto& [b, c] : kBivectorPairs)
      r += exterior_product(theta_lower(b), theta_lower(c)) * (wc[a] * cv.w[a][b][c]);
  }
  return r;
}

Multivector bivector_of(const ConnectionValues& cv, int a) {
  Multivector r;
  for (const auto& [b, c] : kBivectorPairs)
    r += exterior_product(theta_lower(b), theta_lower(c)) * cv.w[a][b][c];
  return r;
}

// (omega^a_b)_mu = M^a_b(c) h^c_mu: the so(1,3)-valued 1-form in
// coordinate components, as 4x4 matrices indexed by mu.
std::array<Mat4d, 4> connection_coordinate_matrices(const ConnectionValues& cv,
                                                    const Mat4d& h) {
  std::array<Mat4d, 4> out{};  // out[mu][a][b]
  for (int mu = 0; mu < 4; ++mu)
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        double v = 0.0;
        for (int c = 0; c < 4; ++c) v += cv.matrix(a, b, c) * h[c][mu];
        out[mu][a][b] = v;
      }
  return out;
}

}  // namespace

double TorsionTensor::max_abs() const {
  double m = 0.0;
  for (const auto& x : T)
    for (const auto& y : x)
      for (double v : y) m = std::max(m, std::abs(v));
  return m;
}

double CurvatureTensor::max_abs() const {
  double m = 0.0;
  for (const auto& x : R)
    for (const auto& y : x)
      for (const auto& z : y)
        for (double v : z) m = std::max(m, std::abs(v));
  return m;
}

double bivector_component(const Multivector& X, int k, int l) {
  return scalar_product(X, exterior_product(theta(k), theta(l)));
}

Connection Connection::from_component_fields(std::array<std::array<ScalarField, 6>, 4> fields) {
  return Connection([fields = std::move(fields)](const Point& p) {
    ConnectionValues cv;
    for (int a = 0; a < 4; ++a)
      for (int i = 0; i < 6; ++i) {
        const auto [b, c] = kBivectorPairs[i];
        const double v = fields[a][i](p);
        cv.w[a][b][c] = v;
        cv.w[a][c][b] = -v;
      }
    return cv;
  });
}

ConnectionValues levi_civita_from_coframe(const Coframe& frame, const Point& p, double step) {
  const StructureCoefficients sc = structure_coefficients(frame, p, step);
  // all-lowered structure coefficients c_{cab} = eta_cc c^c_{ab}
  auto cl = [&](int c, int a, int b) { return metric_sign(c) * sc(c, a, b); };
  ConnectionValues cv;
  for (int a = 0; a < 4; ++a)
    for (const auto& [pq, b] : kBivectorPairs) {
      // omega_{a pq b} all-lowered: direction a, pair (pq, b)
      const double n = 0.5 * (cl(pq, a, b) + cl(b, pq, a) - cl(a, b, pq));
      const double v = metric_sign(pq) * metric_sign(b) * n;
      cv.w[a][pq][b] = v;
      cv.w[a][b][pq] = -v;
    }
  return cv;
}

Connection Connection::levi_civita(const Coframe& frame, double step) {
  return Connection(
      [frame, step](const Point& p) { return levi_civita_from_coframe(frame, p, step); });
}

Multivector connection_bivector(const Connection& conn, int a, const Point& p) {
  return bivector_of(conn.values(p), a);
}

Multivector covd_clifford(const Connection& conn, const Coframe& frame, const MultivectorField& A,
                          int a, const Point& p, double step) {
  const Multivector d = pfaff_derivative(A, frame, a, p, step);
  const Multivector w = connection_bivector(conn, a, p);
  return d + commutator(w, A(p)) * 0.5;
}

Multivector dirac_operator(const Connection& conn, const Coframe& frame, const MultivectorField& A,
                           const Point& p, double step) {
  Multivector r;
  for (int a = 0; a < 4; ++a) r += theta(a) * covd_clifford(conn, frame, A, a, p, step);
  return r;
}

Multivector form_lie_bracket(const Coframe& frame, const MultivectorField& u,
                             const MultivectorField& v, const Point& p, double step) {
  // Contravariant coordinate components of the 1-form field w at q.
  auto coord_components = [&frame](const MultivectorField& w, const Point& q) {
    const auto wc = vector_components_upper(w(q));
    const auto hi = frame.h_inverse(q);
    std::array<double, 4> out{};
    for (int mu = 0; mu < 4; ++mu)
      for (int a = 0; a < 4; ++a) out[mu] += wc[a] * hi[a][mu];
    return out;
  };

  const auto uc = coord_components(u, p);
  const auto vc = coord_components(v, p);
  std::array<double, 4> bracket{};
  for (int mu = 0; mu < 4; ++mu) {
    Point pp = p, pm = p;
    pp[mu] += step;
    pm[mu] -= step;
    const auto dvp = coord_components(v, pp);
    const auto dvm = coord_components(v, pm);
    const auto dup = coord_components(u, pp);
    const auto dum = coord_components(u, pm);
    for (int nu = 0; nu < 4; ++nu)
      bracket[nu] +=
          (uc[mu] * (dvp[nu] - dvm[nu]) - vc[mu] * (dup[nu] - dum[nu])) / (2.0 * step);
  }

  // Back to the frame, then lower: w = eta_bb (h^b_nu bracket^nu) theta^b.
  const auto hm = frame.h_matrix(p);
  Multivector r;
  for (int b = 0; b < 4; ++b) {
    double wb = 0.0;
    for (int nu = 0; nu < 4; ++nu) wb += hm[b][nu] * bracket[nu];
    r += theta(b) * (metric_sign(b) * wb);
  }
  return r;
}

Multivector torsion_operator(const Connection& conn, const Coframe& frame,
                             const MultivectorField& u, const MultivectorField& v, const Point& p,
                             double step) {
  require_vector(u(p), "torsion_operator u");
  require_vector(v(p), "torsion_operator v");
  const auto uc = vector_components_upper(u(p));
  const auto vc = vector_components_upper(v(p));
  Multivector r;
  for (int a = 0; a < 4; ++a) {
    if (uc[a] != 0.0) r += covd_clifford(conn, frame, v, a, p, step) * uc[a];
    if (vc[a] != 0.0) r -= covd_clifford(conn, frame, u, a, p, step) * vc[a];
  }
  return r - form_lie_bracket(frame, u, v, p, step);
}

TorsionTensor torsion_components(const Connection& conn, const Coframe& frame, const Point& p,
                                 double step) {
  const ConnectionValues cv = conn.values(p);
  const StructureCoefficients sc = structure_coefficients(frame, p, step);
  TorsionTensor t;
  for (int c = 0; c < 4; ++c)
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) t.T[c][a][b] = cv.mixed(c, a, b) - cv.mixed(c, b, a) - sc(c, a, b);
  return t;
}

Multivector torsion_covector(const TorsionTensor& T, const Coframe&, const Point&) {
  Multivector r;
  for (int a = 0; a < 4; ++a) {
    double tr = 0.0;
    for (int b = 0; b < 4; ++b) tr += T.T[b][a][b];
    r += theta(a) * tr;
  }
  return r;
}

Multivector curvature_biform(const Connection& conn, const Coframe& frame,
                             const MultivectorField& u, const MultivectorField& v, const Point& p,
                             double step) {
  require_vector(u(p), "curvature_biform u");
  require_vector(v(p), "curvature_biform v");

  MultivectorField omega_v([&conn, v](const Point& q) { return apply_connection(conn.values(q), v(q)); });
  MultivectorField omega_u([&conn, u](const Point& q) { return apply_connection(conn.values(q), u(q)); });

  const auto uc = vector_components_upper(u(p));
  const auto vc = vector_components_upper(v(p));
  Multivector r;
  for (int a = 0; a < 4; ++a) {
    if (uc[a] != 0.0) r += pfaff_derivative(omega_v, frame, a, p, step) * uc[a];
    if (vc[a] != 0.0) r -= pfaff_derivative(omega_u, frame, a, p, step) * vc[a];
  }
  const ConnectionValues cv = conn.values(p);
  const Multivector wu = apply_connection(cv, u(p));
  const Multivector wv = apply_connection(cv, v(p));
  r += commutator(wu, wv) * 0.5;
  r -= apply_connection(cv, form_lie_bracket(frame, u, v, p, step));
  return r;
}

CurvatureTensor riemann_components(const Connection& conn, const Coframe& frame, const Point& p,
                                   double step) {
  const ConnectionValues cv = conn.values(p);
  const StructureCoefficients sc = structure_coefficients(frame, p, step);
  const auto hi = frame.h_inverse(p);

  // e_a(M_b)^c_d via central differences of the connection matrices.
  std::array<std::array<Mat4d, 4>, 4> dM{};  // dM[a][b] = e_a(M_b)
  for (int mu = 0; mu < 4; ++mu) {
    Point pp = p, pm = p;
    pp[mu] += step;
    pm[mu] -= step;
    const ConnectionValues cp = conn.values(pp);
    const ConnectionValues cm = conn.values(pm);
    for (int a = 0; a < 4; ++a) {
      if (hi[a][mu] == 0.0) continue;
      const double f = hi[a][mu] / (2.0 * step);
      for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 4; ++c)
          for (int d = 0; d < 4; ++d)
            dM[a][b][c][d] += f * (cp.matrix(c, d, b) - cm.matrix(c, d, b));
    }
  }

  CurvatureTensor out;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          double v = dM[a][b][c][d] - dM[b][a][c][d];
          for (int k = 0; k < 4; ++k) {
            v += cv.matrix(c, k, a) * cv.matrix(k, d, b) - cv.matrix(c, k, b) * cv.matrix(k, d, a);
            v -= sc(k, a, b) * cv.matrix(c, d, k);
          }
          out.R[c][d][a][b] = v;
        }
  return out;
}

double commutator_identity_residual(const Connection& conn, const Coframe& frame,
                                    const MultivectorField& t, int a, int b, const Point& p,
                                    double step) {
  require_vector(t(p), "commutator_identity t");

  MultivectorField cov_b([&, b](const Point& q) { return covd_clifford(conn, frame, t, b, q, step); });
  MultivectorField cov_a([&, a](const Point& q) { return covd_clifford(conn, frame, t, a, q, step); });
  const Multivector lhs = covd_clifford(conn, frame, cov_b, a, p, step) -
                          covd_clifford(conn, frame, cov_a, b, p, step);

  MultivectorField th_a = MultivectorField::constant(theta_lower(a));
  MultivectorField th_b = MultivectorField::constant(theta_lower(b));
  const Multivector curv = curvature_biform(conn, frame, th_a, th_b, p, step);
  Multivector rhs = right_contraction(curv, t(p));

  const TorsionTensor T = torsion_components(conn, frame, p, step);
  const ConnectionValues cv = conn.values(p);
  for (int c = 0; c < 4; ++c) {
    const double coef = T.T[c][a][b] - cv.mixed(c, a, b) + cv.mixed(c, b, a);
    if (coef != 0.0) rhs -= covd_clifford(conn, frame, t, c, p, step) * coef;
  }
  return norm_max(lhs - rhs);
}

Mat4d cartan_torsion_2form(const Connection& conn, const Coframe& frame, int a, const Point& p,
                           double step) {
  // d theta^a: antisymmetrized coordinate derivatives of h^a_mu.
  Mat4d out{};
  std::array<std::array<double, 4>, 4> dh{};  // dh[mu][nu] = d_mu h^a_nu
  for (int mu = 0; mu < 4; ++mu) {
    Point pp = p, pm = p;
    pp[mu] += step;
    pm[mu] -= step;
    for (int nu = 0; nu < 4; ++nu)
      dh[mu][nu] = (frame.h(a, nu, pp) - frame.h(a, nu, pm)) / (2.0 * step);
  }
  const auto wmat = connection_coordinate_matrices(conn.values(p), frame.h_matrix(p));
  const Mat4d hm = frame.h_matrix(p);
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      double v = dh[mu][nu] - dh[nu][mu];
      for (int b = 0; b < 4; ++b) v += wmat[mu][a][b] * hm[b][nu] - wmat[nu][a][b] * hm[b][mu];
      out[mu][nu] = v;
    }
  return out;
}

Mat4d cartan_curvature_2form(const Connection& conn, const Coframe& frame, int a, int b,
                             const Point& p, double step) {
  std::array<std::array<Mat4d, 4>, 4> dw{};  // dw[mu][nu] = d_mu (omega_nu matrix)
  for (int mu = 0; mu < 4; ++mu) {
    Point pp = p, pm = p;
    pp[mu] += step;
    pm[mu] -= step;
    const auto wp = connection_coordinate_matrices(conn.values(pp), frame.h_matrix(pp));
    const auto wm = connection_coordinate_matrices(conn.values(pm), frame.h_matrix(pm));
    for (int nu = 0; nu < 4; ++nu)
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          dw[mu][nu][i][j] = (wp[nu][i][j] - wm[nu][i][j]) / (2.0 * step);
  }
  const auto w = connection_coordinate_matrices(conn.values(p), frame.h_matrix(p));
  Mat4d out{};
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      double v = dw[mu][nu][a][b] - dw[nu][mu][a][b];
      for (int c = 0; c < 4; ++c) v += w[mu][a][c] * w[nu][c][b] - w[nu][a][c] * w[mu][c][b];
      out[mu][nu] = v;
    }
  return out;
}

std::pair<double, double> bianchi_residuals(const Connection& conn, const Coframe& frame,
                                            const Point& p, double step) {
  // First identity: d Theta^a + omega^a_b ^ Theta^b - Omega^a_b ^ theta^b.
  double first = 0.0;
  {
    const auto w = connection_coordinate_matrices(conn.values(p), frame.h_matrix(p));
    const Mat4d hm = frame.h_matrix(p);
    for (int a = 0; a < 4; ++a) {
      // d_rho Theta^a_{mu nu} by differencing the 2-form field.
      std::array<Mat4d, 4> dT{};
      for (int rho = 0; rho < 4; ++rho) {
        Point pp = p, pm = p;
        pp[rho] += step;
        pm[rho] -= step;
        const Mat4d tp = cartan_torsion_2form(conn, frame, a, pp, step);
        const Mat4d tm = cartan_torsion_2form(conn, frame, a, pm, step);
        for (int mu = 0; mu < 4; ++mu)
          for (int nu = 0; nu < 4; ++nu) dT[rho][mu][nu] = (tp[mu][nu] - tm[mu][nu]) / (2.0 * step);
      }
      std::array<Mat4d, 4> Tb;
      std::array<Mat4d, 4> Ob;
      for (int b = 0; b < 4; ++b) {
        Tb[b] = cartan_torsion_2form(conn, frame, b, p, step);
        Ob[b] = cartan_curvature_2form(conn, frame, a, b, p, step);
      }
      for (int rho = 0; rho < 4; ++rho)
        for (int mu = rho + 1; mu < 4; ++mu)
          for (int nu = mu + 1; nu < 4; ++nu) {
            double v = dT[rho][mu][nu] + dT[mu][nu][rho] + dT[nu][rho][mu];
            for (int b = 0; b < 4; ++b) {
              v += w[rho][a][b] * Tb[b][mu][nu] + w[mu][a][b] * Tb[b][nu][rho] +
                   w[nu][a][b] * Tb[b][rho][mu];
              v -= Ob[b][rho][mu] * hm[b][nu] + Ob[b][mu][nu] * hm[b][rho] +
                   Ob[b][nu][rho] * hm[b][mu];
            }
            first = std::max(first, std::abs(v));
          }
    }
  }

  // Second identity: cyclic D_rho Omega_{mu nu} with D = d + [omega, .].
  double second = 0.0;
  {
    auto omega_matrix_field = [&](const Point& q) {
      return connection_coordinate_matrices(conn.values(q), frame.h_matrix(q));
    };
    auto curv_matrices = [&](const Point& q) {
      std::array<std::array<Mat4d, 4>, 4> M{};  // M[mu][nu] as matrix [a][b]
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          const Mat4d o = cartan_curvature_2form(conn, frame, a, b, q, step);
          for (int mu = 0; mu < 4; ++mu)
            for (int nu = 0; nu < 4; ++nu) M[mu][nu][a][b] = o[mu][nu];
        }
      return M;
    };

    const auto w = omega_matrix_field(p);
    const auto Om = curv_matrices(p);
    std::array<std::array<std::array<Mat4d, 4>, 4>, 4> dOm{};  // dOm[rho][mu][nu]
    for (int rho = 0; rho < 4; ++rho) {
      Point pp = p, pm = p;
      pp[rho] += step;
      pm[rho] -= step;
      const auto op = curv_matrices(pp);
      const auto om = curv_matrices(pm);
      for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu)
          for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
              dOm[rho][mu][nu][i][j] = (op[mu][nu][i][j] - om[mu][nu][i][j]) / (2.0 * step);
    }

    auto covd_entry = [&](int rho, int mu, int nu, int i, int j) {
      double v = dOm[rho][mu][nu][i][j];
      for (int k = 0; k < 4; ++k)
        v += w[rho][i][k] * Om[mu][nu][k][j] - Om[mu][nu][i][k] * w[rho][k][j];
      return v;
    };
    for (int rho = 0; rho < 4; ++rho)
      for (int mu = rho + 1; mu < 4; ++mu)
        for (int nu = mu + 1; nu < 4; ++nu)
          for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
              const double v = covd_entry(rho, mu, nu, i, j) + covd_entry(mu, nu, rho, i, j) +
                               covd_entry(nu, rho, mu, i, j);
              second = std::max(second, std::abs(v));
            }
  }
  return {first, second};
}

double metric_compatibility_residual(
    const std::array<std::array<std::array<double, 4>, 4>, 4>& w) {
  // omega_{acb} = eta_aa eta_bb omega_c^{ab}; compatibility is
  // omega_{acb} = -omega_{bca}, i.e. antisymmetry of the stored pair.
  double m = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int c = 0; c < 4; ++c)
      for (int b = 0; b < 4; ++b) {
        const double lhs = metric_sign(a) * metric_sign(b) * w[c][a][b];
        const double rhs = metric_sign(b) * metric_sign(a) * w[c][b][a];
        m = std::max(m, std::abs(lhs + rhs));
      }
  return m;
}

double metric_compatibility_residual(const Connection& conn, const Coframe&, const Point& p,
                                     double) {
  return metric_compatibility_residual(conn.values(p).w);
}

}  // namespace starc
