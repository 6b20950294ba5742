#include "starc/algebra.hpp"

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"

using namespace starc;

namespace {

bool approx_equal(const Multivector& a, const Multivector& b, double tol = 1e-12) {
  return norm_max(a - b) <= tol;
}

}  // namespace

TEST_CASE("cayley table matches the independent blade multiplier") {
  for (unsigned a = 0; a < 16; ++a)
    for (unsigned b = 0; b < 16; ++b) {
      const auto [sign, mask] = oracles::blade_mul(a, b);
      const Multivector got = Multivector::blade(a) * Multivector::blade(b);
      CHECK(got[mask] == static_cast<double>(sign));
      for (unsigned m = 0; m < 16; ++m)
        if (m != mask) CHECK(got[m] == 0.0);
    }
}

TEST_CASE("generator relations: theta^a theta^b + theta^b theta^a = 2 eta^ab") {
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const Multivector s = theta(a) * theta(b) + theta(b) * theta(a);
      Multivector want = Multivector::scalar(a == b ? 2.0 * metric_sign(a) : 0.0);
      CHECK(norm_max(s - want) == 0.0);
    }
}

TEST_CASE("geometric product basics") {
  CHECK(approx_equal(theta(0) * theta(0), Multivector::scalar(1.0)));
  CHECK(approx_equal(theta(1) * theta(1), Multivector::scalar(-1.0)));
  oracles::Rng rng(7);
  const Multivector A = rng.multivector();
  CHECK(approx_equal(Multivector::scalar(1.0) * A, A));
  const Multivector t01 = theta(0) * theta(1);
  CHECK(approx_equal(t01 * t01, Multivector::scalar(1.0)));
}

TEST_CASE("geometric product of random multivectors matches the oracle") {
  oracles::Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const Multivector a = rng.multivector();
    const Multivector b = rng.multivector();
    CHECK(approx_equal(a * b, oracles::multiply(a, b), 1e-12));
  }
}

TEST_CASE("associativity over random triples") {
  oracles::Rng rng(13);
  for (int i = 0; i < 2000; ++i) {
    const Multivector a = rng.multivector();
    const Multivector b = rng.multivector();
    const Multivector c = rng.multivector();
    CHECK(norm_max((a * b) * c - a * (b * c)) <= 1e-12);
  }
}

TEST_CASE("grade projection") {
  const Multivector m =
      Multivector::scalar(3.0) + theta(0) * 2.0 + theta(0) * theta(1);
  CHECK(approx_equal(grade_project(m, 1), theta(0) * 2.0));
  CHECK(approx_equal(grade_project(pseudoscalar(), 4), pseudoscalar()));
  CHECK(norm_max(grade_project(m, -1)) == 0.0);
  CHECK(norm_max(grade_project(m, 5)) == 0.0);

  oracles::Rng rng(17);
  const Multivector a = rng.multivector();
  Multivector sum;
  for (int k = 0; k <= 4; ++k) sum += grade_project(a, k);
  CHECK(approx_equal(sum, a, 0.0));
}

TEST_CASE("exterior product") {
  CHECK(norm_max(exterior_product(theta(0), theta(0))) == 0.0);
  CHECK(approx_equal(exterior_product(theta(0), theta(1)), theta(0) * theta(1)));
  const Multivector b01 = exterior_product(theta(0), theta(1));
  const Multivector b23 = exterior_product(theta(2), theta(3));
  CHECK(approx_equal(exterior_product(b01, b23), pseudoscalar()));

  // A_r ^ B_s = (-1)^{rs} B_s ^ A_r on homogeneous arguments
  oracles::Rng rng(19);
  for (int r = 0; r <= 4; ++r)
    for (int s = 0; s <= 4; ++s) {
      const Multivector A = rng.homogeneous(r);
      const Multivector B = rng.homogeneous(s);
      const double sign = (r * s % 2 == 0) ? 1.0 : -1.0;
      CHECK(approx_equal(exterior_product(A, B), exterior_product(B, A) * sign, 1e-12));
    }
}

TEST_CASE("scalar product") {
  CHECK(scalar_product(theta(0), theta(0)) == doctest::Approx(1.0));
  CHECK(scalar_product(theta(0), theta(1)) == doctest::Approx(0.0));
  const Multivector b01 = exterior_product(theta(0), theta(1));
  CHECK(scalar_product(b01, b01) == doctest::Approx(-1.0));  // Gram det |1 0; 0 -1|
  // symmetric, vanishing across grades
  oracles::Rng rng(23);
  const Multivector A = rng.homogeneous(1);
  const Multivector B = rng.homogeneous(3);
  CHECK(scalar_product(A, B) == doctest::Approx(0.0));
  const Multivector C = rng.multivector();
  const Multivector D = rng.multivector();
  CHECK(scalar_product(C, D) == doctest::Approx(scalar_product(D, C)));
}

TEST_CASE("contractions") {
  const Multivector b01 = exterior_product(theta(0), theta(1));
  CHECK(approx_equal(left_contraction(theta(0), b01), theta(1)));
  CHECK(approx_equal(left_contraction(Multivector::scalar(0.5), b01), b01 * 0.5));
  CHECK(norm_max(left_contraction(b01, theta(0))) == 0.0);

  CHECK(approx_equal(right_contraction(b01, theta(1)), -theta(0)));
  CHECK(approx_equal(right_contraction(b01, Multivector::scalar(0.5)), b01 * 0.5));
  CHECK(norm_max(right_contraction(theta(0), b01)) == 0.0);
}

TEST_CASE("half-commutator identities for contractions and wedge") {
  oracles::Rng rng(29);
  for (int s = 0; s <= 4; ++s) {
    const Multivector a = rng.homogeneous(1);
    const Multivector B = rng.homogeneous(s);
    const double sg = (s % 2 == 0) ? 1.0 : -1.0;
    CHECK(approx_equal(left_contraction(a, B), (a * B - B * a * sg) * 0.5, 1e-12));
    CHECK(approx_equal(exterior_product(a, B), (a * B + B * a * sg) * 0.5, 1e-12));
    CHECK(approx_equal(a * B, left_contraction(a, B) + exterior_product(a, B), 1e-12));
  }
  // A_r _| B_s duality and the grade-0 form of the scalar product
  for (int r = 0; r <= 4; ++r)
    for (int s = 0; s <= 4; ++s) {
      const Multivector A = rng.homogeneous(r);
      const Multivector B = rng.homogeneous(s);
      const double sg = ((r * (s - 1)) % 2 == 0) ? 1.0 : -1.0;
      CHECK(approx_equal(left_contraction(A, B), right_contraction(B, A) * sg, 1e-12));
      if (r == s)
        CHECK(scalar_product(A, B) ==
              doctest::Approx((reversion(A) * B)[0]).epsilon(1e-12));
    }
}

TEST_CASE("reversion") {
  CHECK(approx_equal(reversion(theta(0) * theta(1)), -(theta(0) * theta(1))));
  CHECK(approx_equal(reversion(theta(0)), theta(0)));
  CHECK(approx_equal(reversion(pseudoscalar()), pseudoscalar()));
  oracles::Rng rng(31);
  const Multivector a = rng.multivector();
  CHECK(approx_equal(reversion(reversion(a)), a, 0.0));
}

TEST_CASE("commutator") {
  const Multivector b01 = theta(0) * theta(1);
  // blade oracle: theta0 theta1 theta0 = -theta1, theta0 theta0 theta1 = +theta1
  CHECK(approx_equal(commutator(b01, theta(0)), theta(1) * -2.0));
  oracles::Rng rng(37);
  const Multivector a = rng.multivector();
  CHECK(norm_max(commutator(a, a)) <= 1e-15);
  const Multivector b23 = theta(2) * theta(3);
  CHECK(norm_max(commutator(b01, b23)) == 0.0);
}

TEST_CASE("hodge star") {
  CHECK(approx_equal(hodge_star(Multivector::scalar(1.0)), pseudoscalar()));
  CHECK(approx_equal(hodge_star(pseudoscalar()), Multivector::scalar(-1.0)));
  CHECK(approx_equal(hodge_star(exterior_product(theta(0), theta(1))),
                     -(theta(2) * theta(3))));

  // defining pairing (B_k . A_k) tau = B_k ^ *A_k, exhaustive on basis blades
  for (unsigned a = 0; a < 16; ++a)
    for (unsigned b = 0; b < 16; ++b) {
      if (std::popcount(a) != std::popcount(b)) continue;
      const Multivector A = Multivector::blade(a);
      const Multivector B = Multivector::blade(b);
      const Multivector lhs = pseudoscalar() * scalar_product(B, A);
      const Multivector rhs = exterior_product(B, hodge_star(A));
      CHECK(norm_max(lhs - rhs) == 0.0);
    }

  // inverse on every grade
  oracles::Rng rng(41);
  const Multivector m = rng.multivector();
  CHECK(approx_equal(hodge_star_inverse(hodge_star(m)), m, 1e-12));
}

TEST_CASE("primitive idempotent e = (1+theta0)/2") {
  const Multivector e = (Multivector::scalar(1.0) + theta(0)) * 0.5;
  CHECK(norm_max(e * e - e) == 0.0);
}

TEST_CASE("exp of a bivector") {
  CHECK(approx_equal(exp_bivector(Multivector()).value(), Multivector::scalar(1.0)));

  // rotation by pi in the 1-2 plane: sandwich sends theta1 to -theta1
  const double a = std::numbers::pi / 2.0;
  const Rotor U = exp_bivector(theta(1) * theta(2) * a);
  CHECK(approx_equal(sandwich(U, theta(1)), -theta(1), 1e-12));
  CHECK(approx_equal(sandwich(U, theta(3)), theta(3), 1e-12));

  // closed-form cross-check on scalar-square generators
  oracles::Rng rng(43);
  for (int i = 0; i < 20; ++i) {
    const Multivector F = exterior_product(theta(0), theta(1)) * rng.uniform() +
                          exterior_product(theta(1), theta(2)) * 0.0;
    CHECK(approx_equal(exp_bivector(F).value(), oracles::exp_closed_form(F), 1e-13));
    const Multivector G = exterior_product(theta(1), theta(2)) * rng.uniform();
    CHECK(approx_equal(exp_bivector(G).value(), oracles::exp_closed_form(G), 1e-13));
  }

  // rotor normalization for random bivectors
  for (int i = 0; i < 50; ++i) {
    const Rotor U2 = exp_bivector(rng.bivector());
    CHECK(norm_max(U2.value() * reversion(U2.value()) - Multivector::scalar(1.0)) <= 1e-12);
  }

  CHECK_THROWS_AS(exp_bivector(theta(0)), NotABivector);
  CHECK_THROWS_AS(exp_bivector(Multivector::scalar(0.5) + theta(1) * theta(2)), NotABivector);
}

TEST_CASE("sandwich") {
  oracles::Rng rng(47);
  const Multivector a = rng.multivector();
  CHECK(approx_equal(sandwich(Rotor::identity(), a), a, 0.0));

  const Rotor U = exp_bivector(rng.bivector(0.8));
  CHECK(approx_equal(sandwich(U, pseudoscalar()), pseudoscalar(), 1e-12));

  // orthogonality: transformed 1-vectors keep their scalar products
  for (int i = 0; i < 100; ++i) {
    const Rotor R = exp_bivector(rng.bivector());
    const Multivector v = rng.homogeneous(1);
    const Multivector w = rng.homogeneous(1);
    CHECK(scalar_product(sandwich(R, v), sandwich(R, w)) ==
          doctest::Approx(scalar_product(v, w)).epsilon(1e-10));
  }

  // grade preservation
  for (int k = 0; k <= 4; ++k) {
    const Rotor R = exp_bivector(rng.bivector());
    const Multivector v = rng.homogeneous(k);
    CHECK(is_grade(sandwich(R, v), k, 1e-12));
  }
}

TEST_CASE("norms") {
  CHECK(norm_max(Multivector()) == 0.0);
  CHECK(norm_max(theta(0) - theta(1)) == 1.0);
  CHECK(norm_max(pseudoscalar() * 3.0) == 3.0);
  CHECK(norm_l2(theta(0) - theta(1)) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("rotor validation") {
  CHECK_THROWS_AS(Rotor(theta(0)), NotARotor);
  CHECK_THROWS_AS(Rotor(Multivector::scalar(2.0)), NotARotor);
  CHECK_NOTHROW(Rotor(Multivector::scalar(-1.0)));
}
