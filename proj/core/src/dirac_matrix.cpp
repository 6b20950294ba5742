#include "starc/dirac_matrix.hpp"

#include <cmath>

namespace starc {

namespace {

Mat4c zero_matrix() { return Mat4c{}; }

Mat4c identity_matrix() {
  Mat4c m{};
  for (int i = 0; i < 4; ++i) m[i][i] = 1.0;
  return m;
}

Mat4c multiply(const Mat4c& a, const Mat4c& b) {
  Mat4c r{};
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) {
      const Complex aik = a[i][k];
      if (aik == Complex{}) continue;
      for (int j = 0; j < 4; ++j) r[i][j] += aik * b[k][j];
    }
  return r;
}

const std::array<Mat4c, 16>& blade_table() {
  static const std::array<Mat4c, 16> table = [] {
    std::array<Mat4c, 16> t;
    t[0] = identity_matrix();
    for (int a = 0; a < 4; ++a) t[1u << a] = gamma_matrix(a);
    for (unsigned mask = 1; mask < 16; ++mask) {
      if ((mask & (mask - 1)) == 0) continue;  // single generators done
      Mat4c m = identity_matrix();  // ascending generator order
      for (int a = 0; a < 4; ++a)
        if (mask & (1u << a)) m = multiply(m, gamma_matrix(a));
      t[mask] = m;
    }
    return t;
  }();
  return table;
}

}  // namespace

Mat4c gamma_matrix(int a) {
  Mat4c m = zero_matrix();
  const Complex i(0.0, 1.0);
  switch (a) {
    case 0:
      m[0][0] = 1;
      m[1][1] = 1;
      m[2][2] = -1;
      m[3][3] = -1;
      break;
    case 1:
      m[0][3] = 1;
      m[1][2] = 1;
      m[2][1] = -1;
      m[3][0] = -1;
      break;
    case 2:
      m[0][3] = -i;
      m[1][2] = i;
      m[2][1] = i;
      m[3][0] = -i;
      break;
    case 3:
      m[0][2] = 1;
      m[1][3] = -1;
      m[2][0] = -1;
      m[3][1] = 1;
      break;
  }
  return m;
}

Mat4c blade_matrix(unsigned mask) { return blade_table()[mask & 15u]; }

Mat4c to_matrix(const Multivector& m) {
  Mat4c r = zero_matrix();
  for (unsigned mask = 0; mask < 16; ++mask) {
    const double c = m[mask];
    if (c == 0.0) continue;
    const Mat4c& b = blade_table()[mask];
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) r[i][j] += c * b[i][j];
  }
  return r;
}

Col4c spinor_column(const Multivector& psi) {
  const Mat4c m = to_matrix(psi);
  return {m[0][1], m[1][1], m[2][1], m[3][1]};
}

double column_norm(const Col4c& c) {
  double n = 0.0;
  for (const Complex& z : c) n += std::norm(z);
  return std::sqrt(n);
}

double matrix_dirac_oracle(const SpinorRepresentative& psi, const EmPotential& em,
                           const Coframe& frame, const Point& p, double step) {
  const auto h = frame.h_matrix(p);
  for (int a = 0; a < 4; ++a)
    for (int mu = 0; mu < 4; ++mu)
      if (std::abs(h[a][mu] - (a == mu ? 1.0 : 0.0)) > 1e-10)
        throw UnsupportedScenario("matrix Dirac oracle requires a Cartesian Minkowski tetrad");

  const Complex i(0.0, 1.0);
  const Col4c col = spinor_column(psi(p));
  const Multivector A = em.A(p);

  Col4c residual{};
  for (int k = 0; k < 4; ++k) residual[k] = em.m * col[k];
  for (int a = 0; a < 4; ++a) {
    Point pp = p, pm = p;
    pp[a] += step;
    pm[a] -= step;
    const Col4c cp = spinor_column(psi(pp));
    const Col4c cm = spinor_column(psi(pm));
    Col4c da;
    for (int k = 0; k < 4; ++k)
      da[k] = (cp[k] - cm[k]) / (2.0 * step) - i * em.q * A[1u << a] * col[k];
    const Mat4c& g = gamma_matrix(a);
    for (int r = 0; r < 4; ++r)
      for (int k = 0; k < 4; ++k) residual[r] += i * g[r][k] * da[k];
  }
  return column_norm(residual);
}

}  // namespace starc
