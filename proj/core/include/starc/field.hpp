#pragma once

// Scalar and multivector fields over a chart, tetrads, frame derivations,
// Pfaff derivatives, and structure coefficients.
//
// Derivatives are central finite differences with a caller-supplied step;
// multivector fields differentiate coefficient-wise in the fixed theta-blade
// basis and contract with the inverse tetrad:
//   pfaff_a A(p) = h_a^mu(p) * [A(p + h e_mu) - A(p - h e_mu)] / (2h).

#include <array>
#include <functional>
#include <memory>

#include "starc/algebra.hpp"
#include "starc/chart.hpp"
#include "starc/expression.hpp"

namespace starc {

class ScalarField {
 public:
  ScalarField() : fn_([](const Point&) { return 0.0; }) {}
  explicit ScalarField(ExprAst ast)
      : fn_([ast = std::move(ast)](const Point& p) { return ast.eval(p); }) {}
  explicit ScalarField(std::function<double(const Point&)> fn) : fn_(std::move(fn)) {}
  static ScalarField constant(double v) {
    return ScalarField([v](const Point&) { return v; });
  }

  // Throws DomainError on a non-finite value.
  double eval(const Point& p) const;
  // Raw evaluation without the finiteness check (hot paths).
  double operator()(const Point& p) const { return fn_(p); }

 private:
  std::function<double(const Point&)> fn_;
};

class MultivectorField {
 public:
  MultivectorField()
      : fn_([](const Point&) { return Multivector(); }) {}
  explicit MultivectorField(std::function<Multivector(const Point&)> fn) : fn_(std::move(fn)) {}
  static MultivectorField constant(const Multivector& m) {
    return MultivectorField([m](const Point&) { return m; });
  }
  // One scalar field per blade, ascending bitmask order.
  static MultivectorField from_components(std::array<ScalarField, kBlades> comps);

  Multivector operator()(const Point& p) const { return fn_(p); }

 private:
  std::function<Multivector(const Point&)> fn_;
};

// Orthonormal tetrad theta^a = h^a_mu dx^mu with frame metric eta.
// h_inv is the matrix inverse h_a^mu, computed pointwise.
class Coframe {
 public:
  // Entries indexed [a][mu].
  explicit Coframe(std::array<std::array<ScalarField, 4>, 4> h);
  static Coframe minkowski();

  double h(int a, int mu, const Point& p) const { return h_[a][mu](p); }
  // Inverse tetrad h_a^mu at p (row a, column mu).
  std::array<std::array<double, 4>, 4> h_inverse(const Point& p) const;
  std::array<std::array<double, 4>, 4> h_matrix(const Point& p) const;

  // e_a(f)(p) = h_a^mu(p) d_mu f(p), central differences.
  double frame_apply(int a, const ScalarField& f, const Point& p, double step) const;

 private:
  std::array<std::array<ScalarField, 4>, 4> h_;
};

// c^c_{ab} with [e_a, e_b] = c^c_{ab} e_c; antisymmetric in (a,b).
struct StructureCoefficients {
  std::array<std::array<std::array<double, 4>, 4>, 4> c{};  // [c][a][b]
  double operator()(int cc, int a, int b) const { return c[cc][a][b]; }
};

// Directional coefficient-wise derivative of A along the frame vector e_a.
Multivector pfaff_derivative(const MultivectorField& A, const Coframe& frame, int a,
                             const Point& p, double step);

// e_a(f)(p); named per-operation entry point mirroring Coframe::frame_apply.
double frame_vector_apply(const Coframe& frame, int a, const ScalarField& f, const Point& p,
                          double step);

// c^c_{ab} from the commutator of the frame derivations applied to the
// coordinate functions: c^c_{ab} = h^c_nu (e_a(h_b^nu) - e_b(h_a^nu)).
StructureCoefficients structure_coefficients(const Coframe& frame, const Point& p, double step);

// The frame-basis volume element tau = theta^5.
Multivector volume_element(const Coframe& frame, const Point& p);

// det(h^a_mu)(p); throws SingularTetrad when |det| < 1e-14.
double tetrad_determinant(const Coframe& frame, const Point& p);

// Pointwise field combinators.
MultivectorField field_product(const MultivectorField& a, const MultivectorField& b);
MultivectorField field_sum(const MultivectorField& a, const MultivectorField& b);

}  // namespace starc
