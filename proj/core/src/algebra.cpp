#include "starc/algebra.hpp"

#include <bit>
#include <cmath>

namespace starc {

namespace {

// sign of blade(a)*blade(b): transposition parity of merging b past a,
// times the metric factor of every repeated generator.
constexpr int product_sign(unsigned a, unsigned b) {
  int swaps = 0;
  unsigned rest = a >> 1;
  while (rest != 0) {
    swaps += std::popcount(rest & b);
    rest >>= 1;
  }
  int sign = (swaps % 2 == 0) ? 1 : -1;
  unsigned common = a & b;
  while (common != 0) {
    int k = std::countr_zero(common);
    if (k != 0) sign = -sign;  // eta^{kk} = -1 for spatial generators
    common &= common - 1;
  }
  return sign;
}

struct CayleyTable {
  int8_t sign[kBlades][kBlades];
  constexpr CayleyTable() : sign{} {
    for (unsigned a = 0; a < kBlades; ++a)
      for (unsigned b = 0; b < kBlades; ++b) sign[a][b] = static_cast<int8_t>(product_sign(a, b));
  }
};

constexpr CayleyTable kTable{};

constexpr int grade_of(unsigned mask) { return std::popcount(mask); }

}  // namespace

int cayley_sign(unsigned a, unsigned b) { return kTable.sign[a & 15u][b & 15u]; }

Multivector Multivector::operator*(const Multivector& o) const {
  Multivector r;
  for (unsigned a = 0; a < kBlades; ++a) {
    const double ca = c_[a];
    if (ca == 0.0) continue;
    for (unsigned b = 0; b < kBlades; ++b) {
      const double cb = o.c_[b];
      if (cb == 0.0) continue;
      r[a ^ b] += kTable.sign[a][b] * ca * cb;
    }
  }
  return r;
}

Multivector geometric_product(const Multivector& a, const Multivector& b) { return a * b; }

Multivector theta(int a) { return Multivector::blade(1u << a); }

Multivector theta_lower(int a) { return Multivector::blade(1u << a, metric_sign(a)); }

Multivector pseudoscalar() { return Multivector::blade(15u); }

Multivector grade_project(const Multivector& a, int k) {
  Multivector r;
  if (k < 0 || k > 4) return r;
  for (unsigned m = 0; m < kBlades; ++m)
    if (grade_of(m) == k) r[m] = a[m];
  return r;
}

Multivector exterior_product(const Multivector& a, const Multivector& b) {
  // <A_r B_s>_{r+s} blade-wise: only disjoint blades contribute.
  Multivector r;
  for (unsigned ma = 0; ma < kBlades; ++ma) {
    const double ca = a[ma];
    if (ca == 0.0) continue;
    for (unsigned mb = 0; mb < kBlades; ++mb) {
      if ((ma & mb) != 0) continue;
      const double cb = b[mb];
      if (cb == 0.0) continue;
      r[ma ^ mb] += kTable.sign[ma][mb] * ca * cb;
    }
  }
  return r;
}

double scalar_product(const Multivector& a, const Multivector& b) {
  // <~a b>_0 = sum over blades of a_m b_m * sign(~m) * sign(m m).
  double s = 0.0;
  for (unsigned m = 0; m < kBlades; ++m) {
    if (a[m] == 0.0 || b[m] == 0.0) continue;
    const int k = grade_of(m);
    const int rev = (k * (k - 1) / 2) % 2 == 0 ? 1 : -1;
    s += rev * kTable.sign[m][m] * a[m] * b[m];
  }
  return s;
}

Multivector left_contraction(const Multivector& a, const Multivector& b) {
  Multivector r;
  for (unsigned ma = 0; ma < kBlades; ++ma) {
    const double ca = a[ma];
    if (ca == 0.0) continue;
    for (unsigned mb = 0; mb < kBlades; ++mb) {
      const double cb = b[mb];
      if (cb == 0.0) continue;
      // <blade(ma) blade(mb)>_{s-r} is nonzero iff ma is contained in mb.
      if ((ma & ~mb) != 0) continue;
      r[ma ^ mb] += kTable.sign[ma][mb] * ca * cb;
    }
  }
  return r;
}

Multivector right_contraction(const Multivector& a, const Multivector& b) {
  Multivector r;
  for (unsigned ma = 0; ma < kBlades; ++ma) {
    const double ca = a[ma];
    if (ca == 0.0) continue;
    for (unsigned mb = 0; mb < kBlades; ++mb) {
      const double cb = b[mb];
      if (cb == 0.0) continue;
      if ((mb & ~ma) != 0) continue;
      r[ma ^ mb] += kTable.sign[ma][mb] * ca * cb;
    }
  }
  return r;
}

Multivector reversion(const Multivector& a) {
  Multivector r;
  for (unsigned m = 0; m < kBlades; ++m) {
    const int k = grade_of(m);
    r[m] = ((k * (k - 1) / 2) % 2 == 0) ? a[m] : -a[m];
  }
  return r;
}

Multivector grade_involution(const Multivector& a) {
  Multivector r;
  for (unsigned m = 0; m < kBlades; ++m) r[m] = (grade_of(m) % 2 == 0) ? a[m] : -a[m];
  return r;
}

Multivector commutator(const Multivector& a, const Multivector& b) { return a * b - b * a; }

Multivector hodge_star(const Multivector& a) { return reversion(a) * pseudoscalar(); }

Multivector hodge_star_inverse(const Multivector& a) {
  // star(star(A_p)) = s(p) A_p with s = (-1,+1,-1,+1,-1) on grades 0..4;
  // a grade-j input is the dual of grade 4-j.
  static constexpr double s[5] = {-1.0, 1.0, -1.0, 1.0, -1.0};
  Multivector r;
  for (int j = 0; j <= 4; ++j) r += grade_project(hodge_star(grade_project(a, j)), 4 - j) * s[4 - j];
  return r;
}

double norm_max(const Multivector& a) {
  double n = 0.0;
  for (unsigned m = 0; m < kBlades; ++m) n = std::max(n, std::abs(a[m]));
  return n;
}

double norm_l2(const Multivector& a) {
  double n = 0.0;
  for (unsigned m = 0; m < kBlades; ++m) n += a[m] * a[m];
  return std::sqrt(n);
}

bool is_grade(const Multivector& a, int k, double tol) {
  return norm_max(a - grade_project(a, k)) <= tol;
}

bool is_even(const Multivector& a, double tol) {
  return norm_max(a - grade_involution(a)) <= 2.0 * tol;
}

Rotor::Rotor(const Multivector& value, double tol) : v_(value) {
  if (!is_even(value, tol)) throw NotARotor("rotor value has odd-grade components");
  const Multivector uu = value * reversion(value);
  if (norm_max(uu - Multivector::scalar(1.0)) > tol)
    throw NotARotor("rotor value is not normalized (U ~U != 1)");
}

Rotor exp_bivector(const Multivector& F, double tol) {
  if (norm_max(F - grade_project(F, 2)) > tol)
    throw NotABivector("exp_bivector argument is not a pure bivector");
  Multivector sum = Multivector::scalar(1.0);
  Multivector term = Multivector::scalar(1.0);
  for (int n = 1; n <= 64; ++n) {
    term = term * F / static_cast<double>(n);
    sum += term;
    if (norm_max(term) < 1e-16) break;
  }
  return Rotor(sum, 1e-9);
}

Multivector sandwich(const Rotor& U, const Multivector& a) {
  return U.value() * a * reversion(U.value());
}

}  // namespace starc
