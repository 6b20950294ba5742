#include "starc/connection.hpp"

#include <cmath>

#include "doctest.h"
#include "oracles.hpp"

using namespace starc;

namespace {

const std::array<std::string, 4> kCoords{{"t", "x", "y", "z"}};

ScalarField sf(const std::string& text) {
  return ScalarField(parse_expression(text, kCoords));
}

Coframe rindler_coframe() {
  std::array<std::array<ScalarField, 4>, 4> h;
  for (int a = 0; a < 4; ++a)
    for (int mu = 0; mu < 4; ++mu) h[a][mu] = ScalarField::constant(a == mu ? 1.0 : 0.0);
  h[0][0] = sf("x");
  return Coframe(std::move(h));
}

// t, x Cartesian; theta^2 = d th, theta^3 = sin(th) d ph (unit 2-sphere).
Coframe sphere_block_coframe() {
  std::array<std::array<ScalarField, 4>, 4> h;
  for (int a = 0; a < 4; ++a)
    for (int mu = 0; mu < 4; ++mu) h[a][mu] = ScalarField::constant(a == mu ? 1.0 : 0.0);
  h[3][3] = sf("sin(y)");  // y plays the polar angle
  return Coframe(std::move(h));
}

const Point kRindlerP{0.4, 1.2, 0.3, 0.6};
const Point kSphereP{0.3, 0.4, 1.1, 0.5};
const Point kFlatP{0.5, 0.5, 0.5, 0.5};

Connection random_torsioned_connection(oracles::Rng& rng) {
  std::array<std::array<ScalarField, 6>, 4> f;
  const std::array<std::string, 4> exprs{"0.3*x", "0.2*sin(t)", "0.1*y", "0.25*cos(z)"};
  int k = 0;
  for (int a = 0; a < 4; ++a)
    for (int i = 0; i < 6; ++i) {
      if (rng.uniform() > 0.0)
        f[a][i] = sf(exprs[(k++) % 4]);
      else
        f[a][i] = ScalarField::constant(0.2 * rng.uniform());
    }
  return Connection::from_component_fields(std::move(f));
}

}  // namespace

TEST_CASE("connection bivector") {
  SUBCASE("zero connection") {
    CHECK(norm_max(connection_bivector(Connection::zero(), 0, kFlatP)) == 0.0);
  }
  SUBCASE("single component omega_0^{12} = alpha gives alpha theta^1 theta^2") {
    ConnectionValues cv;
    cv.w[0][1][2] = 0.7;
    cv.w[0][2][1] = -0.7;
    const Multivector w = connection_bivector(Connection::constant(cv), 0, kFlatP);
    CHECK(norm_max(w - theta(1) * theta(2) * 0.7) <= 1e-15);
  }
  SUBCASE("grade 2 for random components") {
    oracles::Rng rng(101);
    Connection c = random_torsioned_connection(rng);
    for (int a = 0; a < 4; ++a) CHECK(is_grade(connection_bivector(c, a, kFlatP), 2));
  }
}

TEST_CASE("covariant derivative of Clifford fields") {
  const Coframe flat = Coframe::minkowski();
  SUBCASE("zero connection, constant field") {
    MultivectorField A = MultivectorField::constant(theta(1) * theta(2) + theta(0) * 2.0);
    CHECK(norm_max(covd_clifford(Connection::zero(), flat, A, 0, kFlatP, 1e-3)) <= 1e-12);
  }
  SUBCASE("covd theta^b = -omega_a^{bc} theta_c for a constant connection") {
    oracles::Rng rng(103);
    ConnectionValues cv;
    for (const auto& [b, c] : kBivectorPairs)
      for (int a = 0; a < 4; ++a) {
        const double v = rng.uniform();
        cv.w[a][b][c] = v;
        cv.w[a][c][b] = -v;
      }
    const Connection conn = Connection::constant(cv);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        const Multivector lhs =
            covd_clifford(conn, flat, MultivectorField::constant(theta(b)), a, kFlatP, 1e-3);
        Multivector rhs;
        for (int c = 0; c < 4; ++c) rhs -= theta_lower(c) * cv.w[a][b][c];
        CHECK(norm_max(lhs - rhs) <= 1e-10);
      }
  }
  SUBCASE("scalar fields reduce to the frame derivation") {
    oracles::Rng rng(105);
    Connection conn = random_torsioned_connection(rng);
    MultivectorField f([](const Point& p) { return Multivector::scalar(p[0] * p[1]); });
    const Multivector got = covd_clifford(conn, flat, f, 1, kFlatP, 1e-3);
    CHECK(got[0] == doctest::Approx(kFlatP[0]).epsilon(1e-8));
    CHECK(is_grade(got, 0, 1e-10));
  }
  SUBCASE("grade preservation on homogeneous fields") {
    oracles::Rng rng(107);
    Connection conn = random_torsioned_connection(rng);
    for (int k = 0; k <= 4; ++k) {
      const Multivector base = rng.homogeneous(k);
      MultivectorField A([base](const Point& p) { return base * (1.0 + 0.5 * p[0] * p[2]); });
      const Multivector d = covd_clifford(conn, flat, A, 2, kFlatP, 1e-3);
      CHECK(norm_max(d - grade_project(d, k)) <= 1e-10);
    }
  }
  SUBCASE("acts as a derivation over the Clifford product") {
    oracles::Rng rng(109);
    Connection conn = random_torsioned_connection(rng);
    const Multivector ma = rng.multivector();
    const Multivector mb = rng.multivector();
    MultivectorField A([ma](const Point& p) { return ma * std::sin(p[0] + p[1]); });
    MultivectorField B([mb](const Point& p) { return mb * std::exp(0.3 * p[2] - p[3]); });
    const Multivector lhs = covd_clifford(conn, flat, field_product(A, B), 1, kFlatP, 1e-3);
    const Multivector rhs = covd_clifford(conn, flat, A, 1, kFlatP, 1e-3) * B(kFlatP) +
                            A(kFlatP) * covd_clifford(conn, flat, B, 1, kFlatP, 1e-3);
    CHECK(norm_max(lhs - rhs) <= 1e-6);
  }
}

TEST_CASE("levi-civita connection from a coframe") {
  SUBCASE("Cartesian Minkowski gives zero") {
    const ConnectionValues cv = levi_civita_from_coframe(Coframe::minkowski(), kFlatP, 1e-3);
    double m = 0.0;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 4; ++c) m = std::max(m, std::abs(cv.w[a][b][c]));
    CHECK(m <= 1e-10);
  }
  SUBCASE("Rindler-style coframe: omega^0_{01} = 1/x, all else zero") {
    const Coframe frame = rindler_coframe();
    const ConnectionValues cv = levi_civita_from_coframe(frame, kRindlerP, 1e-3);
    CHECK(cv.mixed(0, 0, 1) == doctest::Approx(1.0 / kRindlerP[1]).epsilon(1e-6));
    // primitive storage carries omega_0^{01} = -1/x
    CHECK(cv.w[0][0][1] == doctest::Approx(-1.0 / kRindlerP[1]).epsilon(1e-6));
    double rest = 0.0;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 4; ++c) {
          if (a == 0 && ((b == 0 && c == 1) || (b == 1 && c == 0))) continue;
          rest = std::max(rest, std::abs(cv.w[a][b][c]));
        }
    CHECK(rest <= 1e-7);
  }
  SUBCASE("torsion of the output vanishes") {
    const Coframe rind = rindler_coframe();
    Connection lc = Connection::levi_civita(rind, 1e-3);
    CHECK(torsion_components(lc, rind, kRindlerP, 1e-3).max_abs() <= 1e-7);

    const Coframe sph = sphere_block_coframe();
    Connection lc2 = Connection::levi_civita(sph, 1e-3);
    CHECK(torsion_components(lc2, sph, kSphereP, 1e-3).max_abs() <= 1e-7);
  }
  SUBCASE("metric compatibility") {
    const Coframe rind = rindler_coframe();
    Connection lc = Connection::levi_civita(rind, 1e-3);
    CHECK(metric_compatibility_residual(lc, rind, kRindlerP, 1e-3) <= 1e-12);
  }
}

TEST_CASE("metric compatibility residual flags symmetric perturbations") {
  std::array<std::array<std::array<double, 4>, 4>, 4> w{};
  w[1][0][2] = 0.4;
  w[1][2][0] = -0.4;
  CHECK(metric_compatibility_residual(w) == doctest::Approx(0.0));
  w[1][2][0] = -0.3;  // symmetric part injected
  CHECK(metric_compatibility_residual(w) == doctest::Approx(0.1));

  oracles::Rng rng(111);
  Connection conn = random_torsioned_connection(rng);
  CHECK(metric_compatibility_residual(conn, Coframe::minkowski(), kFlatP, 1e-3) <= 1e-12);
}

TEST_CASE("dirac operator") {
  const Coframe flat = Coframe::minkowski();
  const Connection zero = Connection::zero();
  SUBCASE("constant field on a flat frame") {
    MultivectorField A = MultivectorField::constant(theta(0) * theta(3));
    CHECK(norm_max(dirac_operator(zero, flat, A, kFlatP, 1e-3)) <= 1e-12);
  }
  SUBCASE("gradient of a coordinate") {
    MultivectorField x_field([](const Point& p) { return Multivector::scalar(p[1]); });
    const Multivector d = dirac_operator(zero, flat, x_field, kFlatP, 1e-3);
    CHECK(norm_max(d - theta(1)) <= 1e-8);
  }
  SUBCASE("splits into d and -delta for Levi-Civita connections") {
    struct Case {
      Coframe frame;
      Point p;
    };
    const Case cases[] = {{Coframe::minkowski(), kFlatP}, {rindler_coframe(), kRindlerP}};
    for (const auto& cse : cases) {
      Connection lc = Connection::levi_civita(cse.frame, 1e-3);
      for (int grade : {1, 2}) {
        MultivectorField A([grade](const Point& p) {
          Multivector m;
          if (grade == 1)
            m = theta(0) * std::sin(p[1]) + theta(1) * (p[0] * p[3]) + theta(2) * 0.4;
          else
            m = theta(0) * theta(1) * std::cos(p[3]) +
                exterior_product(theta(1), theta(2)) * (0.5 * p[0] * p[0]) +
                exterior_product(theta(2), theta(3)) * p[1];
          return m;
        });
        const Multivector full = dirac_operator(lc, cse.frame, A, cse.p, 1e-3);
        const Multivector wedge = grade_project(full, grade + 1);
        const Multivector contr = grade_project(full, grade - 1);
        const Multivector dA =
            oracles::exterior_derivative_oracle(A, cse.frame, grade, cse.p, 1e-3);
        const Multivector deltaA = oracles::codifferential_oracle(A, cse.frame, grade, cse.p, 1e-3);
        CHECK(norm_max(wedge - dA) <= 1e-6);
        CHECK(norm_max(contr + deltaA) <= 1e-6);
      }
    }
  }
}

TEST_CASE("torsion operator and components") {
  const Coframe flat = Coframe::minkowski();
  oracles::Rng rng(113);

  SUBCASE("Levi-Civita torsion vanishes through the operator") {
    const Coframe rind = rindler_coframe();
    Connection lc = Connection::levi_civita(rind, 5e-4);
    MultivectorField u([](const Point& p) { return theta(0) * (1.0 + p[1]) + theta(2) * p[0]; });
    MultivectorField v([](const Point& p) { return theta(1) * 2.0 + theta(3) * p[1]; });
    CHECK(norm_max(torsion_operator(lc, rind, u, v, kRindlerP, 5e-4)) <= 1e-6);
    // second-order convergence: the residual is discretization, not bias
    Connection lc2 = Connection::levi_civita(rind, 1e-3);
    const double coarse = norm_max(torsion_operator(lc2, rind, u, v, kRindlerP, 1e-3));
    const double fine = norm_max(torsion_operator(lc, rind, u, v, kRindlerP, 5e-4));
    CHECK(coarse / fine >= 3.5);
    CHECK(coarse / fine <= 4.5);
  }
  SUBCASE("u = v gives zero") {
    Connection conn = random_torsioned_connection(rng);
    MultivectorField u([](const Point& p) { return theta(1) * p[0] + theta(2) * 0.3; });
    CHECK(norm_max(torsion_operator(conn, flat, u, u, kFlatP, 1e-3)) <= 1e-10);
  }
  SUBCASE("operator contracts to the component tensor") {
    Connection conn = random_torsioned_connection(rng);
    const TorsionTensor T = torsion_components(conn, flat, kFlatP, 1e-3);
    MultivectorField u([](const Point& p) { return theta(0) * (0.6 + 0.1 * p[2]) - theta(3); });
    MultivectorField v([](const Point& p) { return theta(1) * (1.0 - p[0]) + theta(2) * 0.8; });
    const Multivector tau = torsion_operator(conn, flat, u, v, kFlatP, 1e-3);
    const Multivector z = theta(0) * 0.4 + theta(1) * 1.1 - theta(2) * 0.2 + theta(3) * 0.9;

    double want = 0.0;
    for (int d = 0; d < 4; ++d)
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
          want += z[1u << d] * (metric_sign(a) * u(kFlatP)[1u << a]) *
                  (metric_sign(b) * v(kFlatP)[1u << b]) * T.T[d][a][b];
    CHECK(scalar_product(z, tau) == doctest::Approx(want).epsilon(1e-6));
  }
  SUBCASE("rejects non-vector arguments") {
    Connection conn = random_torsioned_connection(rng);
    MultivectorField bad = MultivectorField::constant(theta(0) * theta(1));
    MultivectorField good = MultivectorField::constant(theta(0));
    CHECK_THROWS_AS(torsion_operator(conn, flat, bad, good, kFlatP, 1e-3), NotAVector);
  }
  SUBCASE("component formula on a zero connection returns -c") {
    const Coframe rind = rindler_coframe();
    const TorsionTensor T = torsion_components(Connection::zero(), rind, kRindlerP, 1e-3);
    const StructureCoefficients sc = structure_coefficients(rind, kRindlerP, 1e-3);
    for (int c = 0; c < 4; ++c)
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
          CHECK(T.T[c][a][b] == doctest::Approx(-sc(c, a, b)).epsilon(1e-8));
  }
}

TEST_CASE("torsion covector") {
  const Coframe flat = Coframe::minkowski();
  SUBCASE("Levi-Civita gives zero") {
    const Coframe rind = rindler_coframe();
    Connection lc = Connection::levi_civita(rind, 1e-3);
    const TorsionTensor T = torsion_components(lc, rind, kRindlerP, 1e-3);
    CHECK(norm_max(torsion_covector(T, rind, kRindlerP)) <= 1e-6);
  }
  SUBCASE("single-component trace") {
    TorsionTensor T;
    T.T[1][0][1] = 0.9;
    T.T[1][1][0] = -0.9;
    CHECK(norm_max(torsion_covector(T, flat, kFlatP) - theta(0) * 0.9) <= 1e-15);
  }
  SUBCASE("linear in the tensor") {
    TorsionTensor T;
    T.T[2][1][2] = 0.3;
    T.T[3][1][3] = -0.2;
    TorsionTensor T2 = T;
    for (auto& x : T2.T)
      for (auto& y : x)
        for (auto& v : y) v *= 2.0;
    CHECK(norm_max(torsion_covector(T2, flat, kFlatP) - torsion_covector(T, flat, kFlatP) * 2.0) <=
          1e-15);
  }
}

TEST_CASE("curvature biform and components") {
  const Coframe flat = Coframe::minkowski();
  oracles::Rng rng(115);

  SUBCASE("zero connection") {
    MultivectorField u = MultivectorField::constant(theta_lower(0));
    MultivectorField v = MultivectorField::constant(theta_lower(1));
    CHECK(norm_max(curvature_biform(Connection::zero(), flat, u, v, kFlatP, 1e-3)) <= 1e-12);
  }
  SUBCASE("constant connection on a Cartesian chart leaves the commutator term") {
    ConnectionValues cv;
    cv.w[0][1][2] = 0.8;
    cv.w[0][2][1] = -0.8;
    cv.w[1][0][3] = -0.5;
    cv.w[1][3][0] = 0.5;
    Connection conn = Connection::constant(cv);
    MultivectorField u = MultivectorField::constant(theta_lower(0));
    MultivectorField v = MultivectorField::constant(theta_lower(1));
    const Multivector got = curvature_biform(conn, flat, u, v, kFlatP, 1e-3);
    const Multivector wu = connection_bivector(conn, 0, kFlatP);
    const Multivector wv = connection_bivector(conn, 1, kFlatP);
    CHECK(norm_max(got - commutator(wu, wv) * 0.5) <= 1e-10);
  }
  SUBCASE("biform components equal the index formula") {
    const Coframe sph = sphere_block_coframe();
    Connection lc = Connection::levi_civita(sph, 1e-3);
    const CurvatureTensor R = riemann_components(lc, sph, kSphereP, 1e-3);
    for (const auto& [a, b] : kBivectorPairs) {
      MultivectorField u = MultivectorField::constant(theta_lower(a));
      MultivectorField v = MultivectorField::constant(theta_lower(b));
      const Multivector biform = curvature_biform(lc, sph, u, v, kSphereP, 1e-3);
      for (const auto& [k, l] : kBivectorPairs) {
        const double got = bivector_component(biform, k, l);
        const double want = metric_sign(l) * R.R[k][l][a][b];
        CHECK(got == doctest::Approx(want).epsilon(1e-6).scale(1.0));
      }
    }
  }
  SUBCASE("flat components vanish, Rindler included") {
    const CurvatureTensor R0 = riemann_components(Connection::zero(), flat, kFlatP, 1e-3);
    CHECK(R0.max_abs() <= 1e-12);
    const Coframe rind = rindler_coframe();
    Connection lc = Connection::levi_civita(rind, 1e-3);
    const CurvatureTensor R = riemann_components(lc, rind, kRindlerP, 1e-3);
    CHECK(R.max_abs() <= 1e-6);
  }
  SUBCASE("unit sphere block has curvature 1/r^2 = 1") {
    const Coframe sph = sphere_block_coframe();
    Connection lc = Connection::levi_civita(sph, 1e-3);
    const CurvatureTensor R = riemann_components(lc, sph, kSphereP, 1e-3);
    CHECK(R.R[2][3][2][3] == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(R.R[3][2][2][3] == doctest::Approx(-1.0).epsilon(1e-5));
    CHECK(std::abs(R.R[0][1][0][1]) <= 1e-6);
  }
  SUBCASE("antisymmetry in the form pair") {
    Connection conn = random_torsioned_connection(rng);
    const CurvatureTensor R = riemann_components(conn, flat, kFlatP, 1e-3);
    for (int c = 0; c < 4; ++c)
      for (int d = 0; d < 4; ++d)
        for (int a = 0; a < 4; ++a)
          for (int b = 0; b < 4; ++b)
            CHECK(R.R[c][d][a][b] ==
                  doctest::Approx(-R.R[c][d][b][a]).epsilon(1e-8).scale(1.0));
  }
}

TEST_CASE("commutator identity") {
  const Coframe flat = Coframe::minkowski();
  SUBCASE("flat, zero connection, linear field") {
    MultivectorField t([](const Point& p) { return theta(0) * p[1] + theta(2) * (2.0 * p[0]); });
    CHECK(commutator_identity_residual(Connection::zero(), flat, t, 0, 1, kFlatP, 1e-3) <= 1e-6);
  }
  SUBCASE("Rindler Levi-Civita") {
    const Coframe rind = rindler_coframe();
    Connection lc = Connection::levi_civita(rind, 1e-3);
    MultivectorField t([](const Point& p) { return theta(0) * std::sin(p[1]) + theta(1) * p[0]; });
    for (const auto& [a, b] : kBivectorPairs)
      CHECK(commutator_identity_residual(lc, rind, t, a, b, kRindlerP, 1e-3) <= 1e-4);
  }
  SUBCASE("random torsioned connection") {
    oracles::Rng rng(117);
    Connection conn = random_torsioned_connection(rng);
    MultivectorField t([](const Point& p) { return theta(2) * std::cos(p[0]) + theta(3) * p[1]; });
    for (const auto& [a, b] : kBivectorPairs)
      CHECK(commutator_identity_residual(conn, flat, t, a, b, kFlatP, 1e-3) <= 1e-4);
  }
  SUBCASE("curvature-commutator link for general grades") {
    // [covd_a, covd_b]t - covd_{[e_a,e_b]}t = 1/2 [R(theta_a^theta_b), t]
    oracles::Rng rng(119);
    Connection conn = random_torsioned_connection(rng);
    const Multivector base = rng.homogeneous(2);
    MultivectorField t([base](const Point& p) { return base * (1.0 + 0.4 * p[1]); });
    const int a = 0, b = 1;
    MultivectorField cov_b([&](const Point& q) { return covd_clifford(conn, flat, t, b, q, 1e-3); });
    MultivectorField cov_a([&](const Point& q) { return covd_clifford(conn, flat, t, a, q, 1e-3); });
    const Multivector lhs = covd_clifford(conn, flat, cov_b, a, kFlatP, 1e-3) -
                            covd_clifford(conn, flat, cov_a, b, kFlatP, 1e-3);
    // coordinate frame on a Cartesian chart: [e_a, e_b] = 0
    const Multivector curv =
        curvature_biform(conn, flat, MultivectorField::constant(theta_lower(a)),
                         MultivectorField::constant(theta_lower(b)), kFlatP, 1e-3);
    CHECK(norm_max(lhs - commutator(curv, t(kFlatP)) * 0.5) <= 1e-4);
  }
}

TEST_CASE("cartan structure forms") {
  const Coframe flat = Coframe::minkowski();
  SUBCASE("flat chart, zero connection") {
    for (int a = 0; a < 4; ++a) {
      const Mat4d th = cartan_torsion_2form(Connection::zero(), flat, a, kFlatP, 1e-3);
      for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) CHECK(std::abs(th[mu][nu]) <= 1e-10);
    }
  }
  SUBCASE("zero connection on the Rindler coframe: Theta^0 = d theta^0") {
    const Coframe rind = rindler_coframe();
    const StructureCoefficients sc = structure_coefficients(rind, kRindlerP, 1e-3);
    const Mat4d th = cartan_torsion_2form(Connection::zero(), rind, 0, kRindlerP, 1e-3);
    const auto hi = rind.h_inverse(kRindlerP);
    double val = 0.0;  // Theta^0(e_0, e_1)
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu) val += th[mu][nu] * hi[0][mu] * hi[1][nu];
    CHECK(val == doctest::Approx(-sc(0, 0, 1)).epsilon(1e-6));
  }
  SUBCASE("2-form evaluation matches the torsion tensor") {
    oracles::Rng rng(121);
    Connection conn = random_torsioned_connection(rng);
    const Coframe rind = rindler_coframe();
    const TorsionTensor T = torsion_components(conn, rind, kRindlerP, 1e-3);
    const auto hi = rind.h_inverse(kRindlerP);
    for (int a = 0; a < 4; ++a) {
      const Mat4d th = cartan_torsion_2form(conn, rind, a, kRindlerP, 1e-3);
      for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 4; ++c) {
          double val = 0.0;
          for (int mu = 0; mu < 4; ++mu)
            for (int nu = 0; nu < 4; ++nu) val += th[mu][nu] * hi[b][mu] * hi[c][nu];
          CHECK(val == doctest::Approx(T.T[a][b][c]).epsilon(1e-6).scale(1.0));
        }
    }
  }
  SUBCASE("curvature 2-form: flat vanishes; constant connection keeps omega^omega") {
    ConnectionValues cv;
    cv.w[2][0][1] = 0.4;
    cv.w[2][1][0] = -0.4;
    cv.w[3][1][2] = 0.6;
    cv.w[3][2][1] = -0.6;
    Connection conn = Connection::constant(cv);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        const Mat4d om = cartan_curvature_2form(conn, flat, a, b, kFlatP, 1e-3);
        // omega^a_c ^ omega^c_b only (derivatives vanish)
        for (int mu = 0; mu < 4; ++mu)
          for (int nu = 0; nu < 4; ++nu) {
            double want = 0.0;
            for (int c = 0; c < 4; ++c)
              want += cv.matrix(a, c, mu) * cv.matrix(c, b, nu) -
                      cv.matrix(a, c, nu) * cv.matrix(c, b, mu);
            CHECK(om[mu][nu] == doctest::Approx(want).epsilon(1e-9).scale(1.0));
          }
      }
    const Mat4d zero = cartan_curvature_2form(Connection::zero(), flat, 0, 1, kFlatP, 1e-3);
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu) CHECK(std::abs(zero[mu][nu]) <= 1e-12);
  }
  SUBCASE("curvature 2-form evaluation matches the component tensor") {
    const Coframe sph = sphere_block_coframe();
    Connection lc = Connection::levi_civita(sph, 1e-3);
    const CurvatureTensor R = riemann_components(lc, sph, kSphereP, 1e-3);
    const auto hi = sph.h_inverse(kSphereP);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        const Mat4d om = cartan_curvature_2form(lc, sph, a, b, kSphereP, 1e-3);
        for (int c = 0; c < 4; ++c)
          for (int d = 0; d < 4; ++d) {
            double val = 0.0;
            for (int mu = 0; mu < 4; ++mu)
              for (int nu = 0; nu < 4; ++nu) val += om[mu][nu] * hi[c][mu] * hi[d][nu];
            CHECK(val == doctest::Approx(R.R[a][b][c][d]).epsilon(1e-6).scale(1.0));
          }
      }
  }
}

TEST_CASE("bianchi identities") {
  const Coframe flat = Coframe::minkowski();
  SUBCASE("flat chart") {
    const auto [first, second] = bianchi_residuals(Connection::zero(), flat, kFlatP, 1e-3);
    CHECK(first <= 1e-12);
    CHECK(second <= 1e-12);
  }
  SUBCASE("Rindler Levi-Civita") {
    const Coframe rind = rindler_coframe();
    Connection lc = Connection::levi_civita(rind, 1e-3);
    const auto [first, second] = bianchi_residuals(lc, rind, kRindlerP, 1e-3);
    CHECK(first <= 1e-3);
    CHECK(second <= 1e-3);
  }
  SUBCASE("constant non-abelian connection: second identity is Jacobi-exact") {
    ConnectionValues cv;
    cv.w[0][1][2] = 0.7;
    cv.w[0][2][1] = -0.7;
    cv.w[1][0][1] = 0.4;
    cv.w[1][1][0] = -0.4;
    cv.w[2][1][3] = -0.5;
    cv.w[2][3][1] = 0.5;
    Connection conn = Connection::constant(cv);
    const auto [first, second] = bianchi_residuals(conn, flat, kFlatP, 1e-3);
    CHECK(second <= 1e-10);
    CHECK(first <= 1e-9);  // torsion 2-form is position-independent here
  }
}
