#include "starc/field.hpp"

#include <cmath>

namespace starc {

namespace {

using Mat4 = std::array<std::array<double, 4>, 4>;

double det4(const Mat4& m) {
  double det = 0.0;
  for (int j = 0; j < 4; ++j) {
    double minor[3][3];
    for (int r = 1; r < 4; ++r) {
      int cc = 0;
      for (int c = 0; c < 4; ++c) {
        if (c == j) continue;
        minor[r - 1][cc++] = m[r][c];
      }
    }
    const double m3 = minor[0][0] * (minor[1][1] * minor[2][2] - minor[1][2] * minor[2][1]) -
                      minor[0][1] * (minor[1][0] * minor[2][2] - minor[1][2] * minor[2][0]) +
                      minor[0][2] * (minor[1][0] * minor[2][1] - minor[1][1] * minor[2][0]);
    det += ((j % 2 == 0) ? 1.0 : -1.0) * m[0][j] * m3;
  }
  return det;
}

Mat4 invert4(const Mat4& m) {
  // Gauss-Jordan with partial pivoting.
  Mat4 a = m;
  Mat4 inv{};
  for (int i = 0; i < 4; ++i) inv[i][i] = 1.0;
  for (int col = 0; col < 4; ++col) {
    int piv = col;
    for (int r = col + 1; r < 4; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (std::abs(a[piv][col]) < 1e-14) throw SingularTetrad("tetrad matrix is singular");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    const double d = a[col][col];
    for (int c = 0; c < 4; ++c) {
      a[col][c] /= d;
      inv[col][c] /= d;
    }
    for (int r = 0; r < 4; ++r) {
      if (r == col) continue;
      const double f = a[r][col];
      if (f == 0.0) continue;
      for (int c = 0; c < 4; ++c) {
        a[r][c] -= f * a[col][c];
        inv[r][c] -= f * inv[col][c];
      }
    }
  }
  return inv;
}

}  // namespace

double ScalarField::eval(const Point& p) const {
  const double v = fn_(p);
  if (!std::isfinite(v)) throw DomainError("scalar field evaluated to a non-finite value");
  return v;
}

MultivectorField MultivectorField::from_components(std::array<ScalarField, kBlades> comps) {
  return MultivectorField([comps = std::move(comps)](const Point& p) {
    Multivector m;
    for (unsigned i = 0; i < kBlades; ++i) m[i] = comps[i](p);
    return m;
  });
}

Coframe::Coframe(std::array<std::array<ScalarField, 4>, 4> h) : h_(std::move(h)) {}

Coframe Coframe::minkowski() {
  std::array<std::array<ScalarField, 4>, 4> h;
  for (int a = 0; a < 4; ++a)
    for (int mu = 0; mu < 4; ++mu) h[a][mu] = ScalarField::constant(a == mu ? 1.0 : 0.0);
  return Coframe(std::move(h));
}

Mat4 Coframe::h_matrix(const Point& p) const {
  Mat4 m;
  for (int a = 0; a < 4; ++a)
    for (int mu = 0; mu < 4; ++mu) m[a][mu] = h_[a][mu](p);
  return m;
}

Mat4 Coframe::h_inverse(const Point& p) const {
  // h_a^mu is the inverse of h^a_mu: h^a_mu h_b^mu = delta^a_b. With h
  // indexed [a][mu], the inverse transposed gives [a][mu] = h_a^mu.
  const Mat4 inv = invert4(h_matrix(p));
  Mat4 r;
  for (int a = 0; a < 4; ++a)
    for (int mu = 0; mu < 4; ++mu) r[a][mu] = inv[mu][a];
  return r;
}

double Coframe::frame_apply(int a, const ScalarField& f, const Point& p, double step) const {
  const Mat4 hi = h_inverse(p);
  double v = 0.0;
  for (int mu = 0; mu < 4; ++mu) {
    if (hi[a][mu] == 0.0) continue;
    Point pp = p, pm = p;
    pp[mu] += step;
    pm[mu] -= step;
    v += hi[a][mu] * (f.eval(pp) - f.eval(pm)) / (2.0 * step);
  }
  return v;
}

Multivector pfaff_derivative(const MultivectorField& A, const Coframe& frame, int a,
                             const Point& p, double step) {
  const Mat4 hi = frame.h_inverse(p);
  Multivector r;
  for (int mu = 0; mu < 4; ++mu) {
    if (hi[a][mu] == 0.0) continue;
    Point pp = p, pm = p;
    pp[mu] += step;
    pm[mu] -= step;
    r += (A(pp) - A(pm)) * (hi[a][mu] / (2.0 * step));
  }
  return r;
}

double frame_vector_apply(const Coframe& frame, int a, const ScalarField& f, const Point& p,
                          double step) {
  return frame.frame_apply(a, f, p, step);
}

StructureCoefficients structure_coefficients(const Coframe& frame, const Point& p, double step) {
  // e_a(h_b^nu) by central differences of the pointwise inverse.
  std::array<Mat4, 4> dh;  // dh[mu] = d_mu h_inv
  for (int mu = 0; mu < 4; ++mu) {
    Point pp = p, pm = p;
    pp[mu] += step;
    pm[mu] -= step;
    const Mat4 a = frame.h_inverse(pp);
    const Mat4 b = frame.h_inverse(pm);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) dh[mu][i][j] = (a[i][j] - b[i][j]) / (2.0 * step);
  }
  const Mat4 hi = frame.h_inverse(p);
  const Mat4 hm = frame.h_matrix(p);

  StructureCoefficients out;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) {
      // [e_a, e_b]^nu = h_a^mu d_mu h_b^nu - h_b^mu d_mu h_a^nu
      double bracket[4];
      for (int nu = 0; nu < 4; ++nu) {
        double v = 0.0;
        for (int mu = 0; mu < 4; ++mu) v += hi[a][mu] * dh[mu][b][nu] - hi[b][mu] * dh[mu][a][nu];
        bracket[nu] = v;
      }
      for (int c = 0; c < 4; ++c) {
        double v = 0.0;
        for (int nu = 0; nu < 4; ++nu) v += hm[c][nu] * bracket[nu];
        out.c[c][a][b] = v;
        out.c[c][b][a] = -v;
      }
    }
  return out;
}

Multivector volume_element(const Coframe&, const Point&) { return pseudoscalar(); }

double tetrad_determinant(const Coframe& frame, const Point& p) {
  const double d = det4(frame.h_matrix(p));
  if (std::abs(d) < 1e-14) throw SingularTetrad("tetrad determinant vanishes");
  return d;
}

MultivectorField field_product(const MultivectorField& a, const MultivectorField& b) {
  return MultivectorField([a, b](const Point& p) { return a(p) * b(p); });
}

MultivectorField field_sum(const MultivectorField& a, const MultivectorField& b) {
  return MultivectorField([a, b](const Point& p) { return a(p) + b(p); });
}

}  // namespace starc
