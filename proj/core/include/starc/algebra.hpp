#pragma once

// Numeric kernel for the spacetime algebra Cl(1,3) over the orthonormal
// generators theta^0..theta^3, metric eta = diag(1,-1,-1,-1).
//
// A multivector is stored as 16 coefficients indexed by blade bitmask:
// bit k set <=> the blade contains theta^k, factors in ascending index
// order. All product signs derive from transposition parity plus metric
// factors, tabulated once in a 16x16 Cayley table.

#include <array>
#include <cstdint>

#include "starc/errors.hpp"

namespace starc {

inline constexpr int kBlades = 16;

// eta^{aa} for generator index a.
constexpr double metric_sign(int a) { return a == 0 ? 1.0 : -1.0; }

class Multivector {
 public:
  constexpr Multivector() : c_{} {}

  static Multivector scalar(double s) {
    Multivector m;
    m.c_[0] = s;
    return m;
  }
  // Basis blade for a bitmask, optionally scaled.
  static Multivector blade(unsigned mask, double s = 1.0) {
    Multivector m;
    m.c_[mask & 15u] = s;
    return m;
  }

  double operator[](unsigned mask) const { return c_[mask]; }
  double& operator[](unsigned mask) { return c_[mask]; }
  const std::array<double, kBlades>& coeffs() const { return c_; }

  Multivector operator+(const Multivector& o) const {
    Multivector r;
    for (int i = 0; i < kBlades; ++i) r.c_[i] = c_[i] + o.c_[i];
    return r;
  }
  Multivector operator-(const Multivector& o) const {
    Multivector r;
    for (int i = 0; i < kBlades; ++i) r.c_[i] = c_[i] - o.c_[i];
    return r;
  }
  Multivector operator-() const {
    Multivector r;
    for (int i = 0; i < kBlades; ++i) r.c_[i] = -c_[i];
    return r;
  }
  Multivector operator*(double s) const {
    Multivector r;
    for (int i = 0; i < kBlades; ++i) r.c_[i] = c_[i] * s;
    return r;
  }
  friend Multivector operator*(double s, const Multivector& m) { return m * s; }
  Multivector operator/(double s) const { return *this * (1.0 / s); }
  Multivector& operator+=(const Multivector& o) {
    for (int i = 0; i < kBlades; ++i) c_[i] += o.c_[i];
    return *this;
  }
  Multivector& operator-=(const Multivector& o) {
    for (int i = 0; i < kBlades; ++i) c_[i] -= o.c_[i];
    return *this;
  }

  // Geometric (Clifford) product.
  Multivector operator*(const Multivector& o) const;

 private:
  std::array<double, kBlades> c_;
};

// Generators and distinguished elements.
Multivector theta(int a);        // theta^a, a = 0..3
Multivector theta_lower(int a);  // theta_a = eta_aa theta^a
Multivector pseudoscalar();      // theta^5 = theta^0 theta^1 theta^2 theta^3

// Sign of the basis product blade(a) * blade(b); the result mask is a^b.
int cayley_sign(unsigned a, unsigned b);

Multivector geometric_product(const Multivector& a, const Multivector& b);

// Zeroes every coefficient whose blade popcount differs from k.
// k outside 0..4 yields the zero multivector.
Multivector grade_project(const Multivector& a, int k);

// A_r ^ B_s = <A_r B_s>_{r+s}, extended bilinearly.
Multivector exterior_product(const Multivector& a, const Multivector& b);

// Grade-diagonal scalar product: <reversion(a) b>_0. On r-blades this is
// the Gram determinant of the factors; cross-grade terms vanish.
double scalar_product(const Multivector& a, const Multivector& b);

// A_r |_ B_s = <A_r B_s>_{s-r} for r <= s, zero otherwise (left contraction).
Multivector left_contraction(const Multivector& a, const Multivector& b);
// A_r _| B_s = <A_r B_s>_{r-s} for r >= s, zero otherwise (right contraction).
Multivector right_contraction(const Multivector& a, const Multivector& b);

// Grade-k part multiplied by (-1)^{k(k-1)/2}.
Multivector reversion(const Multivector& a);

// Grade-k part multiplied by (-1)^k.
Multivector grade_involution(const Multivector& a);

// [a, b] = ab - ba.
Multivector commutator(const Multivector& a, const Multivector& b);

// Hodge dual: *a = reversion(a) theta^5, satisfying
// (B_k . A_k) tau = B_k ^ *A_k on every grade.
Multivector hodge_star(const Multivector& a);
// Inverse of hodge_star (per-grade sign of the double dual).
Multivector hodge_star_inverse(const Multivector& a);

double norm_max(const Multivector& a);
double norm_l2(const Multivector& a);

bool is_grade(const Multivector& a, int k, double tol = 1e-12);
bool is_even(const Multivector& a, double tol = 1e-12);

// Even unit multivector; implements x -> U x ~U.
class Rotor {
 public:
  // Validates evenness and U ~U = 1 within tol.
  explicit Rotor(const Multivector& value, double tol = 1e-9);
  static Rotor identity() { return Rotor(Multivector::scalar(1.0)); }

  const Multivector& value() const { return v_; }
  Rotor reverse() const { return Rotor(reversion(v_)); }

 private:
  Multivector v_;
};

// exp(F) for a pure bivector F, by power series summed until the term
// max-norm drops below 1e-16 (at most 64 terms).
// Throws NotABivector when grade_project(F,2) != F beyond tol.
Rotor exp_bivector(const Multivector& F, double tol = 1e-12);

// U a ~U. Grade-preserving; preserves the scalar product of 1-vectors.
Multivector sandwich(const Rotor& U, const Multivector& a);

}  // namespace starc
