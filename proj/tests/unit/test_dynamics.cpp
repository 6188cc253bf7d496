#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "nhprobe/dynamics.hpp"
#include "nhprobe/error.hpp"
#include "nhprobe/models.hpp"
#include "nhprobe/probes.hpp"
#include "nhprobe/linalg/spectral.hpp"
#include "nhprobe/oracles.hpp"

using namespace nhprobe;
using testing::max_entry;

namespace {

DensityMatrix pure(const ComplexVector& v) { return DensityMatrix(v.normalized() * v.normalized().adjoint(), kDensityTol); }

DensityMatrix maximally_mixed(Eigen::Index n) {
  return DensityMatrix(ComplexMatrix::Identity(n, n) / static_cast<double>(n), kDensityTol);
}

QuenchResult constant_result(double c) {
  QuenchResult r;
  for (int i = 0; i <= 10; ++i) {
    r.times.push_back(i);
    r.le_values.push_back(c);
  }
  return r;
}

}  // namespace

TEST_CASE("density matrix validation") {
  CHECK_NOTHROW(DensityMatrix(ComplexMatrix::Identity(2, 2) / 2.0, kDensityTol));
  CHECK_THROWS_AS(DensityMatrix(ComplexMatrix::Identity(2, 2), kDensityTol), Error);
  ComplexMatrix skew = ComplexMatrix::Identity(2, 2) / 2.0;
  skew(0, 1) = 0.1;
  CHECK_THROWS_AS(DensityMatrix(skew, kDensityTol), Error);
  ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
  neg.diagonal() << 1.2, -0.2;
  CHECK_THROWS_AS(DensityMatrix(neg, kDensityTol), NotPsdError);
}

TEST_CASE("thermal states") {
  const ComplexMatrix h = testing::random_hermitian(5, 3);
  CHECK(max_entry(thermal_state(h, 0.0).matrix() - ComplexMatrix::Identity(5, 5) / 5.0) == 0.0);

  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(1, 1) = 2.0;
  const ComplexMatrix rho = thermal_state(d, 25.0).matrix();
  CHECK(rho(0, 0).real() == doctest::Approx(1.0 / (1.0 + std::exp(-50.0))));
  CHECK(std::abs(rho(1, 1) - std::exp(-50.0) / (1.0 + std::exp(-50.0))) < 1e-30);

  const KitaevSpec spec{4, 1.0, 0.0, 1.0};
  const ComplexMatrix hk = build_hamiltonian(spec, build_modes(spec));
  const auto eig = linalg::herm_eig(hk);
  double z = 0.0;
  for (double e : eig.eigenvalues) z += std::exp(-5.0 * e);
  const double expected = 2.0 * std::exp(-5.0 * eig.eigenvalues[0]) / z;
  const ComplexMatrix q = eig.eigenvectors.leftCols(2);
  const double weight = (q.adjoint() * thermal_state(hk, 5.0).matrix() * q).trace().real();
  CHECK(weight == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("Loschmidt echo reference values") {
  const DensityMatrix rho = thermal_state(testing::random_hermitian(4, 8), 1.0);
  CHECK(loschmidt_echo(rho, rho) == doctest::Approx(1.0).epsilon(1e-10));
  ComplexVector e2 = ComplexVector::Zero(2);
  e2[1] = 1.0;
  CHECK(loschmidt_echo(maximally_mixed(2), pure(e2)) == doctest::Approx(0.5).epsilon(1e-10));
  ComplexVector v = testing::random_matrix(3, 1, 4).col(0);
  CHECK(loschmidt_echo(maximally_mixed(3), pure(v)) == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("Hermitian quench leaves a thermal state fixed") {
  const KitaevSpec spec{3, 1.0, 0.3, 1.0};
  const ComplexMatrix h = build_hamiltonian(spec, build_modes(spec));
  const DensityMatrix rho0 = thermal_state(h, 5.0);
  const auto states = evolve_quench(h, rho0, {0.0, 1.0, 5.0}, 0.05);
  for (const auto& s : states) {
    CHECK(max_entry(s.rho.matrix() - rho0.matrix()) < 1e-12);
    CHECK(s.trace == doctest::Approx(1.0));
    CHECK(loschmidt_echo(rho0, s.rho) == doctest::Approx(1.0).epsilon(1e-10));
  }
  QuenchOptions o;
  o.beta = 5.0;
  o.grid = {0.05, 1.0, 20.0};
  o.t0 = 10.0;
  o.t1 = 20.0;
  const QuenchResult r = quench_echo(h, ComplexMatrix::Zero(h.rows(), h.cols()), o);
  for (double l : r.le_values) CHECK(l == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(r.steady_average == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("pure Jordan block quench") {
  const ComplexMatrix j = jordan_generator(2);
  const auto states = evolve_quench(j, maximally_mixed(2), {1.0}, 0.05);
  REQUIRE(states.size() == 1);
  ComplexMatrix unnormalized(2, 2);
  unnormalized << 1, cplx(0, 1), cplx(0, -1), 2;
  unnormalized /= 2.0;
  CHECK(states[0].trace == doctest::Approx(1.5));
  CHECK(max_entry(states[0].trace * states[0].rho.matrix() - unnormalized) < 1e-12);
}

TEST_CASE("evolve_quench rejects off-grid times") {
  const ComplexMatrix h = ComplexMatrix::Identity(2, 2);
  CHECK_THROWS_AS(evolve_quench(h, maximally_mixed(2), {0.03}, 0.05), Error);
  CHECK_THROWS_AS(evolve_quench(h, maximally_mixed(2), {1.0, 0.5}, 0.05), Error);
  CHECK_THROWS_AS(evolve_quench(h, maximally_mixed(3), {1.0}, 0.05), Error);
}

TEST_CASE("eigenbasis engine agrees with direct propagation") {
  const KitaevSpec spec{3, 1.0, 0.5, 0.8};
  const auto ops = build_modes(spec);
  const ComplexMatrix h = build_hamiltonian(spec, ops);
  for (const ProbeSpec& probe : {ProbeSpec{KitaevEdgeProbe{0.3, false}}, ProbeSpec{KitaevRandomizedProbe{0.2, 0.05}}}) {
    const ComplexMatrix v = build_probe(probe, ops);
    QuenchOptions o;
    o.beta = 2.0;
    o.grid = {0.05, 0.5, 15.0};
    o.t0 = 5.0;
    o.t1 = 15.0;
    const QuenchResult fast = quench_echo(h, v, o);
    const DensityMatrix rho0 = thermal_state(h, o.beta);
    const auto slow = evolve_quench(h + v, rho0, fast.times, o.grid.step);
    REQUIRE(slow.size() == fast.times.size());
    double worst = 0.0, worst_trace = 0.0;
    for (std::size_t k = 0; k < slow.size(); ++k) {
      worst = std::max(worst, std::abs(fast.le_values[k] - loschmidt_echo(rho0, slow[k].rho)));
      worst_trace = std::max(worst_trace, std::abs(fast.norm_traces[k] / slow[k].trace - 1.0));
    }
    CHECK(worst < 1e-8);
    CHECK(worst_trace < 1e-8);
  }
}

TEST_CASE("quench engine details") {
  const KitaevSpec spec{8, 1.0, 0.1, 1.0};
  const auto ops = build_modes(spec);
  const ComplexMatrix h = build_hamiltonian(spec, ops);
  const ComplexMatrix v = build_probe(KitaevEdgeProbe{0.1, false}, ops);
  QuenchOptions o;
  o.grid = {0.05, 1.0, 100.0};
  o.t0 = 50.0;
  o.t1 = 100.0;
  const QuenchResult a = quench_echo(h, v, o);
  CHECK(a.times.size() == 101);
  CHECK(a.le_values.front() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(a.le_values.back() == doctest::Approx(0.5).epsilon(0.2));
  for (double l : a.le_values) {
    CHECK(l >= 0.0);
    CHECK(l <= 1.0);
  }
  const QuenchResult b = quench_echo(h, v, o);
  CHECK(a.le_values == b.le_values);

  QuenchOptions trimmed = o;
  trimmed.dropped_mass = 1e-12;
  const QuenchResult c = quench_echo(h, v, trimmed);
  CHECK(std::abs(c.steady_average - a.steady_average) < 1e-5);
}

TEST_CASE("quench option validation and underflow") {
  const ComplexMatrix h = ComplexMatrix::Zero(2, 2);
  QuenchOptions o;
  o.grid = {0.05, 1.0, 10.0};
  o.t0 = 5.0;
  o.t1 = 20.0;
  CHECK_THROWS_AS(quench_echo(h, h, o), Error);
  o.t1 = 10.0;
  o.beta = -1.0;
  CHECK_THROWS_AS(quench_echo(h, h, o), Error);
  o.beta = 1.0;
  const ComplexMatrix decay = cplx(0, -400) * ComplexMatrix::Identity(2, 2);
  try {
    quench_echo(h, decay, o);
    FAIL("expected underflow");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Underflow);
  }
}

TEST_CASE("time grid") {
  TimeGrid g{0.05, 1.0, 200.0};
  CHECK(g.readouts().size() == 201);
  CHECK(g.steps_per_sample() == 20);
  CHECK_THROWS_AS((TimeGrid{0.05, 0.07, 10.0}.validate()), Error);
  CHECK_THROWS_AS((TimeGrid{0.0, 1.0, 10.0}.validate()), Error);
  CHECK_THROWS_AS((TimeGrid{0.05, 1.0, -1.0}.validate()), Error);
}

TEST_CASE("steady-state average") {
  CHECK(steady_average(constant_result(0.7), 2.0, 8.0) == doctest::Approx(0.7));
  QuenchResult lin;
  for (int i = 0; i <= 10; ++i) {
    lin.times.push_back(i);
    lin.le_values.push_back(0.1 * i);
  }
  CHECK(steady_average(lin, 2.5, 7.5) == doctest::Approx(0.5));
  CHECK(steady_average(lin, 0.0, 10.0) == doctest::Approx(0.5));
  CHECK_THROWS_AS(steady_average(lin, 8.0, 2.0), Error);
  CHECK_THROWS_AS(steady_average(lin, 0.0, 11.0), Error);
}

TEST_CASE("halving the step leaves L(t) unchanged") {
  const std::vector<std::pair<ModelSpec, ProbeSpec>> runs{
      {KitaevSpec{4, 1.0, 0.1, 1.0}, KitaevEdgeProbe{0.1, false}},
      {KitaevSpec{4, 1.0, 2.9, 1.0}, KitaevEdgeProbe{0.1, false}},
      {NanowireSpec{2, 1.0, 0.5, 0.5, 1.5, 1.0}, NanowireAuxProbe{1, 0.05, 0.36}},
      {ParafermionSpec{3, 1.0, 1.8, 3}, ParafermionExactProbe{0.05}},
  };
  for (const auto& [model, probe] : runs) {
    const auto ops = build_modes(model);
    const ComplexMatrix h = build_hamiltonian(model, ops);
    const ComplexMatrix v = build_probe(probe, ops);
    QuenchOptions o;
    o.grid = {0.05, 1.0, 200.0};
    const QuenchResult a = quench_echo(h, v, o);
    o.grid.step = 0.025;
    const QuenchResult b = quench_echo(h, v, o);
    REQUIRE(a.le_values.size() == b.le_values.size());
    double worst = 0.0;
    for (std::size_t k = 0; k < a.le_values.size(); ++k) worst = std::max(worst, std::abs(a.le_values[k] - b.le_values[k]));
    CHECK(worst < 1e-6);
  }
}
