#pragma once

// Independent test oracles. Everything here recomputes expected values by
// a route different from the library implementation: blade products by
// explicit list merging, determinants by cofactor expansion, exterior
// derivative and codifferential from coordinate components, rotor
// exponentials from the scalar-square closed form.

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include "starc/algebra.hpp"
#include "starc/connection.hpp"
#include "starc/field.hpp"

namespace oracles {

using starc::Multivector;
using starc::Point;

// Sign and result mask of blade(a) * blade(b) by merge-and-count:
// concatenate index lists, bubble into ascending order counting swaps,
// cancel equal neighbours with their metric factor.
inline std::pair<int, unsigned> blade_mul(unsigned ma, unsigned mb) {
  std::vector<int> idx;
  for (int k = 0; k < 4; ++k)
    if (ma & (1u << k)) idx.push_back(k);
  for (int k = 0; k < 4; ++k)
    if (mb & (1u << k)) idx.push_back(k);

  int sign = 1;
  bool moved = true;
  while (moved) {
    moved = false;
    for (std::size_t i = 0; i + 1 < idx.size(); ++i) {
      if (idx[i] > idx[i + 1]) {
        std::swap(idx[i], idx[i + 1]);
        sign = -sign;
        moved = true;
      }
    }
  }
  std::vector<int> reduced;
  for (std::size_t i = 0; i < idx.size();) {
    if (i + 1 < idx.size() && idx[i] == idx[i + 1]) {
      sign *= (idx[i] == 0) ? 1 : -1;
      i += 2;
    } else {
      reduced.push_back(idx[i]);
      ++i;
    }
  }
  unsigned mask = 0;
  for (int k : reduced) mask |= 1u << k;
  return {sign, mask};
}

inline Multivector multiply(const Multivector& a, const Multivector& b) {
  Multivector r;
  for (unsigned ma = 0; ma < 16; ++ma)
    for (unsigned mb = 0; mb < 16; ++mb) {
      if (a[ma] == 0.0 || b[mb] == 0.0) continue;
      const auto [sign, mask] = blade_mul(ma, mb);
      r[mask] += sign * a[ma] * b[mb];
    }
  return r;
}

// exp(F) when F*F is a scalar s: cosh/cos closed form.
inline Multivector exp_closed_form(const Multivector& F) {
  const Multivector F2 = multiply(F, F);
  const double s = F2[0];
  Multivector r = Multivector::scalar(1.0);
  if (s > 1e-300) {
    const double w = std::sqrt(s);
    return Multivector::scalar(std::cosh(w)) + F * (std::sinh(w) / w);
  }
  if (s < -1e-300) {
    const double w = std::sqrt(-s);
    return Multivector::scalar(std::cos(w)) + F * (std::sin(w) / w);
  }
  return r + F;
}

inline double det4_cofactor(const std::array<std::array<double, 4>, 4>& m) {
  double det = 0.0;
  for (int j0 = 0; j0 < 4; ++j0) {
    std::array<int, 3> cols{};
    int cc = 0;
    for (int c = 0; c < 4; ++c)
      if (c != j0) cols[cc++] = c;
    double sub = 0.0;
    for (int j1 = 0; j1 < 3; ++j1) {
      std::array<int, 2> c2{};
      int k = 0;
      for (int c = 0; c < 3; ++c)
        if (c != j1) c2[k++] = cols[c];
      const double m2 = m[2][c2[0]] * m[3][c2[1]] - m[2][c2[1]] * m[3][c2[0]];
      sub += ((j1 % 2 == 0) ? 1.0 : -1.0) * m[1][cols[j1]] * m2;
    }
    det += ((j0 % 2 == 0) ? 1.0 : -1.0) * m[0][j0] * sub;
  }
  return det;
}

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  double uniform(double lo = -1.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(gen);
  }
  Multivector multivector(double scale = 1.0) {
    Multivector m;
    for (unsigned i = 0; i < 16; ++i) m[i] = scale * uniform();
    return m;
  }
  Multivector homogeneous(int grade, double scale = 1.0) {
    Multivector m;
    for (unsigned i = 0; i < 16; ++i)
      if (std::popcount(i) == grade) m[i] = scale * uniform();
    return m;
  }
  Multivector bivector(double scale = 1.0) { return homogeneous(2, scale); }
};

// --- coordinate-component exterior derivative / codifferential oracle ---

// Fully antisymmetric frame components of the grade-p part of A.
// comp[a0][a1]... is stored via sorted index access below.
struct PFormCoords {
  int p = 0;
  // value for ascending multi-index (a_0 < ... < a_{p-1}), keyed by mask
  std::array<double, 16> comp{};
};

inline double sign_of_permutation(std::vector<int> v) {
  int s = 1;
  for (std::size_t i = 0; i + 1 < v.size(); ++i)
    for (std::size_t j = 0; j + 1 + i < v.size(); ++j)
      if (v[j] > v[j + 1]) {
        std::swap(v[j], v[j + 1]);
        s = -s;
      }
  return s;
}

// d of the grade-p part of a multivector field, via coordinate components
// and central differences; returns the grade-(p+1) multivector at `at`.
Multivector exterior_derivative_oracle(const starc::MultivectorField& A, const starc::Coframe& frame,
                                       int p, const Point& at, double h);

// delta A_p = (-1)^p star^-1 d star A_p, built on the d-oracle and the
// algebra Hodge (itself pinned exactly by the pairing tests).
Multivector codifferential_oracle(const starc::MultivectorField& A, const starc::Coframe& frame,
                                  int p, const Point& at, double h);

inline Multivector exterior_derivative_oracle(const starc::MultivectorField& A,
                                              const starc::Coframe& frame, int p, const Point& at,
                                              double h) {
  using starc::Mat4d;
  // coordinate components of the grade-p part at q
  auto coord_comps = [&](const Point& q) {
    std::array<double, 16> out{};
    const Multivector v = starc::grade_project(A(q), p);
    const Mat4d hm = frame.h_matrix(q);
    // loop over ascending coordinate multi-indices (as masks)
    for (unsigned mmu = 0; mmu < 16; ++mmu) {
      if (std::popcount(mmu) != p) continue;
      std::vector<int> mus;
      for (int k = 0; k < 4; ++k)
        if (mmu & (1u << k)) mus.push_back(k);
      double val = 0.0;
      // sum over all frame index tuples = sum over masks x permutations
      for (unsigned ma = 0; ma < 16; ++ma) {
        if (std::popcount(ma) != p || v[ma] == 0.0) continue;
        std::vector<int> as;
        for (int k = 0; k < 4; ++k)
          if (ma & (1u << k)) as.push_back(k);
        std::sort(as.begin(), as.end());
        do {
          double prod = v[ma] * sign_of_permutation(as);
          for (int i = 0; i < p; ++i) prod *= hm[as[i]][mus[i]];
          val += prod;
        } while (std::next_permutation(as.begin(), as.end()));
      }
      out[mmu] = val;
    }
    return out;
  };

  // (dA)_{mu_0..mu_p} = sum_i (-1)^i d_{mu_i} A_{..without i..}
  const Mat4d hinv = frame.h_inverse(at);
  Multivector result;
  for (unsigned mnu = 0; mnu < 16; ++mnu) {
    if (std::popcount(mnu) != p + 1) continue;
    std::vector<int> nus;
    for (int k = 0; k < 4; ++k)
      if (mnu & (1u << k)) nus.push_back(k);
    double val = 0.0;
    for (int i = 0; i <= p; ++i) {
      const int mu = nus[i];
      Point qp = at, qm = at;
      qp[mu] += h;
      qm[mu] -= h;
      const auto cp = coord_comps(qp);
      const auto cm = coord_comps(qm);
      const unsigned rest = mnu & ~(1u << mu);
      const double d = (cp[rest] - cm[rest]) / (2.0 * h);
      val += ((i % 2 == 0) ? 1.0 : -1.0) * d;
    }
    // back to frame components: contract with h_a^mu for each slot
    // (dA)_{b_0..b_p} = (dA)_{mu_0..mu_p} h_{b_0}^{mu_0} ...
    // accumulate into the multivector coefficient for the ascending tuple.
    if (val == 0.0) continue;
    // distribute over frame masks
    for (unsigned mb = 0; mb < 16; ++mb) {
      if (std::popcount(mb) != p + 1) continue;
      std::vector<int> bs;
      for (int k = 0; k < 4; ++k)
        if (mb & (1u << k)) bs.push_back(k);
      std::sort(bs.begin(), bs.end());
      double acc = 0.0;
      do {
        double prod = sign_of_permutation(bs);
        for (int i = 0; i <= p; ++i) prod *= hinv[bs[i]][nus[i]];
        acc += prod;
      } while (std::next_permutation(bs.begin(), bs.end()));
      result[mb] += val * acc;
    }
  }
  return result;
}

inline Multivector codifferential_oracle(const starc::MultivectorField& A,
                                         const starc::Coframe& frame, int p, const Point& at,
                                         double h) {
  starc::MultivectorField starA(
      [A, p](const Point& q) { return starc::hodge_star(starc::grade_project(A(q), p)); });
  const Multivector d_star = exterior_derivative_oracle(starA, frame, 4 - p, at, h);
  const Multivector sd = starc::hodge_star_inverse(d_star);
  return sd * ((p % 2 == 0) ? 1.0 : -1.0);
}

}  // namespace oracles
