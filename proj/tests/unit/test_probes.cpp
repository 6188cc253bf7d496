#include <cmath>
#include <numbers>

#include "doctest.h"
#include "helpers.hpp"
#include "nhprobe/error.hpp"
#include "nhprobe/linalg/spectral.hpp"
#include "nhprobe/probes.hpp"

using namespace nhprobe;
using testing::max_entry;

namespace {

// Columns spanning the `k` lowest eigenvectors of H.
ComplexMatrix ground_basis(const ComplexMatrix& h, int k) { return linalg::herm_eig(h).eigenvectors.leftCols(k); }

// ‖[J, P_γ] ∓ 2J‖ / ‖J‖ on the full space, P_γ = iγγ′ from the BdG zero modes.
double parity_residual(const KitaevSpec& spec) {
  const auto ops = build_modes(spec);
  const ZeroModePair zm = extract_zero_modes(build_bdg(spec));
  const ComplexMatrix pg = ground_parity_operator(ComplexMatrix(lift_linear(ops, zm.gamma)),
                                                  ComplexMatrix(lift_linear(ops, zm.gamma_prime)));
  const ComplexMatrix j = build_probe(KitaevEdgeProbe{1.0, false}, ops);
  return parity_commutator_residual(j, pg).residual / linalg::frobenius(j);
}

}  // namespace

TEST_CASE("Kitaev edge probe") {
  const KitaevSpec spec{2, 1.0, 0.0, 1.0};
  const auto ops = build_modes(spec);
  const ComplexMatrix a1 = ops.annihilator(0), a2 = ops.annihilator(1);
  const ComplexMatrix expected = a1 + a1.adjoint() + a2 - a2.adjoint();
  const ComplexMatrix j = build_probe(KitaevEdgeProbe{0.1, false}, ops);
  CHECK(max_entry(j - 0.1 * expected) < 1e-15);
  const ComplexMatrix p = total_parity(ops);
  CHECK(max_entry(p * j + j * p) < 1e-15);
  const ComplexMatrix minus = build_probe(KitaevEdgeProbe{0.1, true}, ops);
  CHECK(max_entry(minus - 0.1 * (a1 + a1.adjoint() - a2 + a2.adjoint())) < 1e-15);
}

TEST_CASE("randomized Kitaev probe adds the adjoint") {
  const auto ops = build_modes(KitaevSpec{3, 1.0, 0.0, 1.0});
  const ComplexMatrix j = build_probe(KitaevEdgeProbe{1.0, false}, ops);
  const ComplexMatrix r = build_probe(KitaevRandomizedProbe{0.1, 0.02}, ops);
  CHECK(max_entry(r - (0.1 * j + 0.02 * j.adjoint())) < 1e-15);
  // λ′ = λ gives a Hermitian perturbation.
  const ComplexMatrix herm = build_probe(KitaevRandomizedProbe{0.1, 0.1}, ops);
  CHECK(max_entry(herm - herm.adjoint()) < 1e-15);
}

TEST_CASE("double Kitaev probe acts on both chains") {
  const DoubleKitaevSpec spec{{2, 1.0, 0.4, 1.0}, 0.0};
  const auto ops = build_modes(spec);
  REQUIRE(ops.count() == 4);
  const ComplexMatrix j = build_probe(DoubleKitaevEdgeProbe{0.1, 0.2}, ops);
  auto edge = [&](int first, int last) {
    const ComplexMatrix a = ops.annihilator(first), b = ops.annihilator(last);
    return ComplexMatrix(a + a.adjoint() + b - b.adjoint());
  };
  CHECK(max_entry(j - (0.1 * edge(0, 1) + 0.2 * edge(2, 3))) < 1e-15);
}

TEST_CASE("nanowire auxiliary probes") {
  const NanowireSpec spec{2, 1.0, 0.5, 0.5, 1.5, 1.0};
  const auto ops = build_modes(spec);
  const double phi = 0.36;
  const cplx i(0, 1);
  const cplx e = std::polar(1.0, phi), ec = std::conj(e);
  auto a = [&](int site, int spin) { return ops.annihilator(2 * site + spin); };
  const ComplexMatrix u1 = a(0, 0), d1 = a(0, 1), uN = a(1, 0), dN = a(1, 1);
  const ComplexMatrix d3 = i * e * u1.adjoint() - i * ec * u1 + ec * d1.adjoint() + e * d1;
  CHECK(max_entry(build_probe(NanowireAuxProbe{3, 1.0, phi}, ops) - d3) < 1e-14);
  const ComplexMatrix d1p = i * e * u1.adjoint() - i * ec * u1 - i * e * dN.adjoint() - i * ec * dN;
  CHECK(max_entry(build_probe(NanowireAuxProbe{1, 1.0, phi}, ops) - d1p) < 1e-14);
  const ComplexMatrix d2p = i * e * u1.adjoint() - i * ec * u1 - ec * uN.adjoint() + e * uN;
  CHECK(max_entry(build_probe(NanowireAuxProbe{2, 1.0, phi}, ops) - d2p) < 1e-14);
  const ComplexMatrix d4p = i * ec * uN.adjoint() - i * e * uN - e * dN.adjoint() - ec * dN;
  CHECK(max_entry(build_probe(NanowireAuxProbe{4, 1.0, phi}, ops) - d4p) < 1e-14);
  CHECK_THROWS_AS(validate(ProbeSpec{NanowireAuxProbe{5, 0.05, phi}}), Error);
}

TEST_CASE("nanowire MZM probe") {
  CHECK(needs_zero_modes(NanowireMzmProbe{}));
  CHECK_FALSE(needs_zero_modes(KitaevEdgeProbe{}));
  const NanowireSpec spec{2, 1.0, 0.5, 0.5, 1.5, 1.0};
  const auto ops = build_modes(spec);
  CHECK_THROWS_AS(build_probe(NanowireMzmProbe{}, ops), Error);

  const ZeroModePair zm = extract_zero_modes(build_bdg(NanowireSpec{50, 1.0, 0.5, 0.5, 1.5, 1.0}));
  const ComplexMatrix j = build_probe(NanowireMzmProbe{1.0}, ops, zm);
  // J = γ + iγ′ with γ on site 1 and γ′ on site N, both self-adjoint and unit.
  const ComplexMatrix g = (j + j.adjoint()) / 2.0;
  const ComplexMatrix gp = (j - j.adjoint()) / cplx(0, 2);
  const Eigen::Index n = ops.dim();
  CHECK(max_entry(g * g - ComplexMatrix::Identity(n, n)) < 1e-12);
  CHECK(max_entry(gp * gp - ComplexMatrix::Identity(n, n)) < 1e-12);
  CHECK(max_entry(g * gp + gp * g) < 1e-12);
  // Site-1 part: fitted phase form.
  const ComplexMatrix d3 = build_probe(NanowireAuxProbe{3, 1.0, zm.phi}, ops);
  CHECK(linalg::relative_distance(g, d3 / linalg::frobenius(d3) * linalg::frobenius(g)) < 0.05);
}

TEST_CASE("parafermion probes") {
  const ParafermionSpec spec{3, 1.0, 1.8, 3};
  const auto ops = build_modes(spec);
  const ComplexMatrix a1 = ops.annihilator(0), a2n = ops.annihilator(ops.count() - 1);
  CHECK(max_entry(build_probe(ParafermionApproxProbe{0.05}, ops) - 0.05 * a1) < 1e-15);
  const cplx phase = std::polar(1.0, -std::numbers::pi / 3);
  CHECK(max_entry(build_probe(ParafermionExactProbe{0.05}, ops) - 0.05 * (a1 + phase * a2n)) < 1e-15);
  CHECK_THROWS_AS(build_probe(KitaevEdgeProbe{}, ops), Error);
}

TEST_CASE("exact parafermion probe is nilpotent on the ground space") {
  const ParafermionSpec spec{5, 1.0, 1.8, 3};
  const auto ops = build_modes(spec);
  const ComplexMatrix h = build_hamiltonian(spec, ops);
  const ComplexMatrix j = build_probe(ParafermionExactProbe{1.0}, ops);
  const ComplexMatrix q = ground_basis(h, 3);
  const ComplexMatrix r = q.adjoint() * j * q;
  CHECK(linalg::frobenius(r * r * r) < 1e-2 * std::pow(linalg::frobenius(r), 3));
  const JordanFormReport rep = jordan_form_report(h, j, 0.2);
  CHECK(rep.subspace_dim == 3);
  CHECK(rep.nilpotency_index == 3);
  CHECK(rep.single_chain);
}

TEST_CASE("parity commutator residual") {
  const KitaevSpec spec{4, 1.0, 0.0, 1.0};
  const auto ops = build_modes(spec);
  const auto c = majorana_modes(ops);
  const ComplexMatrix pg = ground_parity_operator(c.front(), c.back());
  const ComplexMatrix j = build_probe(KitaevEdgeProbe{1.0, false}, ops);
  CHECK(parity_commutator_residual(j, pg).residual < 1e-10);

  const ComplexMatrix h = build_hamiltonian(spec, ops);
  const ComplexMatrix q = ground_basis(h, 2);
  const ComplexMatrix n1 = ops.annihilator(0).adjoint() * ops.annihilator(0);
  const ComplexMatrix jr = q.adjoint() * n1 * q;
  const ParityResidual even = parity_commutator_residual(jr, q.adjoint() * pg * q);
  CHECK(even.residual == doctest::Approx(2 * linalg::frobenius(jr)).epsilon(1e-10));

  const double r0 = parity_residual(KitaevSpec{8, 1.0, 0.0, 1.0});
  const double r4 = parity_residual(KitaevSpec{8, 1.0, 0.4, 1.0});
  const double r8 = parity_residual(KitaevSpec{8, 1.0, 0.8, 1.0});
  CHECK(r0 < 1e-10);
  CHECK(r4 > 1e-6);
  CHECK(r4 < 0.5);
  CHECK(r8 > r4);
}

TEST_CASE("Jordan structure of the Kitaev probe") {
  const KitaevSpec sweet{8, 1.0, 0.0, 1.0};
  const auto ops = build_modes(sweet);
  const ComplexMatrix h = build_hamiltonian(sweet, ops);
  const ComplexMatrix p = total_parity(ops);
  const ComplexMatrix j = build_probe(KitaevEdgeProbe{1.0, false}, ops);
  const JordanFormReport r = jordan_form_report(h, j, default_degeneracy_tol(linalg::herm_eigenvalues(h)), &p);
  CHECK(r.subspace_dim == 2);
  CHECK(r.nilpotency_index == 2);
  CHECK(r.rank == 1);
  CHECK(r.single_chain);
  CHECK(r.next_gap > 1.0);
  CHECK(r.parity_residual < 1e-10);

  const KitaevSpec trivial{8, 1.0, 2.9, 1.0};
  const ComplexMatrix ht = build_hamiltonian(trivial, build_modes(trivial));
  const JordanFormReport rt = jordan_form_report(ht, j, default_degeneracy_tol(linalg::herm_eigenvalues(ht)));
  CHECK(rt.subspace_dim == 1);
  CHECK(std::isnan(rt.parity_residual));
}

TEST_CASE("probe validation") {
  CHECK_THROWS_AS(validate(ProbeSpec{KitaevEdgeProbe{0.0, false}}), Error);
  CHECK_THROWS_AS(validate(ProbeSpec{KitaevRandomizedProbe{0.1, -0.1}}), Error);
  CHECK_THROWS_AS(validate(ProbeSpec{ParafermionExactProbe{std::nan("")}}), Error);
  CHECK(probe_name(ProbeSpec{NanowireAuxProbe{}}) == "nanowire_aux");
  RealVector e(3);
  e << -1.0, 0.0, 3.0;
  CHECK(default_degeneracy_tol(e) == doctest::Approx(4e-6));
}
