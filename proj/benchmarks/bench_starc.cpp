#include <benchmark/benchmark.h>

#include <random>

#include "starc/scenario.hpp"

using namespace starc;

namespace {

Multivector random_multivector(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Multivector m;
  for (unsigned i = 0; i < 16; ++i) m[i] = dist(gen);
  return m;
}

Coframe rindler() {
  std::array<std::array<ScalarField, 4>, 4> h;
  for (int a = 0; a < 4; ++a)
    for (int mu = 0; mu < 4; ++mu) h[a][mu] = ScalarField::constant(a == mu ? 1.0 : 0.0);
  h[0][0] = ScalarField([](const Point& p) { return p[1]; });
  return Coframe(std::move(h));
}

void GeometricProduct(benchmark::State& state) {
  std::mt19937_64 gen(1);
  const Multivector a = random_multivector(gen);
  const Multivector b = random_multivector(gen);
  for (auto _ : state) {
    Multivector c = a * b;
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(GeometricProduct);

void ExpBivector(benchmark::State& state) {
  const Multivector F =
      exterior_product(theta(1), theta(2)) * 0.8 + exterior_product(theta(0), theta(3)) * 0.3;
  for (auto _ : state) {
    Rotor U = exp_bivector(F);
    benchmark::DoNotOptimize(U);
  }
}
BENCHMARK(ExpBivector);

void Sandwich(benchmark::State& state) {
  std::mt19937_64 gen(2);
  const Rotor U = exp_bivector(exterior_product(theta(1), theta(2)) * 0.5);
  const Multivector a = random_multivector(gen);
  for (auto _ : state) {
    Multivector b = sandwich(U, a);
    benchmark::DoNotOptimize(b);
  }
}
BENCHMARK(Sandwich);

void LeviCivitaValues(benchmark::State& state) {
  const Coframe frame = rindler();
  const Point p{0.4, 1.2, 0.3, 0.6};
  for (auto _ : state) {
    ConnectionValues cv = levi_civita_from_coframe(frame, p, 1e-3);
    benchmark::DoNotOptimize(cv);
  }
}
BENCHMARK(LeviCivitaValues);

void RiemannComponents(benchmark::State& state) {
  const Coframe frame = rindler();
  const Connection lc = Connection::levi_civita(frame, 1e-3);
  const Point p{0.4, 1.2, 0.3, 0.6};
  for (auto _ : state) {
    CurvatureTensor R = riemann_components(lc, frame, p, 1e-3);
    benchmark::DoNotOptimize(R);
  }
}
BENCHMARK(RiemannComponents);

void CurvatureBiform(benchmark::State& state) {
  const Coframe frame = rindler();
  const Connection lc = Connection::levi_civita(frame, 1e-3);
  const MultivectorField u = MultivectorField::constant(theta_lower(0));
  const MultivectorField v = MultivectorField::constant(theta_lower(1));
  const Point p{0.4, 1.2, 0.3, 0.6};
  for (auto _ : state) {
    Multivector R = curvature_biform(lc, frame, u, v, p, 1e-3);
    benchmark::DoNotOptimize(R);
  }
}
BENCHMARK(CurvatureBiform);

void DheResidual(benchmark::State& state) {
  const Coframe flat = Coframe::minkowski();
  const Connection zero = Connection::zero();
  SpinorRepresentative psi(MultivectorField([](const Point& p) {
    return Multivector::scalar(std::cos(p[0])) + theta(1) * theta(2) * std::sin(p[0]);
  }));
  EmPotential em{MultivectorField::constant(Multivector()), 0.0, 1.0};
  const Point p{0.5, 0.5, 0.5, 0.5};
  for (auto _ : state) {
    Multivector r = dhe_residual_lorentzian(zero, flat, psi, em, p, 1e-4);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(DheResidual);

void TransformedTorsion(benchmark::State& state) {
  const Coframe flat = Coframe::minkowski();
  const Connection zero = Connection::zero();
  const RotorField U = RotorField::from_generator(
      MultivectorField([](const Point& p) { return theta(1) * theta(2) * p[1]; }));
  const Point p{0.5, 0.5, 0.5, 0.5};
  for (auto _ : state) {
    TorsionTensor T = transformed_torsion_direct(U, zero, flat, p, 1e-3);
    benchmark::DoNotOptimize(T);
  }
}
BENCHMARK(TransformedTorsion);

}  // namespace

BENCHMARK_MAIN();
