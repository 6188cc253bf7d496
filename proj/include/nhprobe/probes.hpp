#pragma once

// Non-Hermitian perturbations J and their validation on the low-energy
// cluster of the unperturbed Hamiltonian.

#include <optional>
#include <string>
#include <variant>

#include "nhprobe/bdg.hpp"

namespace nhprobe {

/// λ(a_1 + a_1† + a_N − a_N†); minus_branch gives λ(a_1 + a_1† − a_N + a_N†).
struct KitaevEdgeProbe {
  double lambda = 0.1;
  bool minus_branch = false;
};

/// λJ + λ′J† with J the edge probe above.
struct KitaevRandomizedProbe {
  double lambda = 0.1;
  double lambda_prime = 0.0;
};

/// κ₁(a_1 + a_1† + a_N − a_N†) + κ₂(b_1 + b_1† + b_N − b_N†).
struct DoubleKitaevEdgeProbe {
  double kappa1 = 0.1;
  double kappa2 = 0.1;
};

/// λ(γ + iγ′) with γ, γ′ the zero modes of a long wire, truncated to the
/// first / last site and placed on the edges of the simulated wire.
struct NanowireMzmProbe {
  double lambda = 0.05;
};

/// One of the four single-particle probes δ1..δ4 at phase φ.
struct NanowireAuxProbe {
  int variant = 1;
  double lambda = 0.05;
  double phi = 0.36;
};

/// λα_1.
struct ParafermionApproxProbe {
  double lambda = 0.05;
};

/// λ(α_1 + e^{−iπ/3} α_{2N}).
struct ParafermionExactProbe {
  double lambda = 0.05;
};

using ProbeSpec = std::variant<KitaevEdgeProbe, KitaevRandomizedProbe, DoubleKitaevEdgeProbe,
                               NanowireMzmProbe, NanowireAuxProbe, ParafermionApproxProbe,
                               ParafermionExactProbe>;

/// "kitaev_edge", "kitaev_randomized", "double_kitaev_edge", "nanowire_mzm",
/// "nanowire_aux", "parafermion_approx", "parafermion_exact".
std::string probe_name(const ProbeSpec& spec);

/// Throws InvalidArgument for non-finite strengths, λ ≤ 0, λ′ < 0 or an
/// unknown δ variant.
void validate(const ProbeSpec& spec);

/// True when the probe needs a ZeroModePair.
bool needs_zero_modes(const ProbeSpec& spec);

/// Full perturbation matrix added to H (λJ, λJ + λ′J†, or κ₁J₁ + κ₂J₂).
ComplexMatrix build_probe(const ProbeSpec& spec, const ModeOperatorSet& ops,
                          const std::optional<ZeroModePair>& zm = std::nullopt);

struct ParityResidual {
  int branch_sign = +1;  // sign s minimizing ‖[J, P] − 2sJ‖_F
  double residual = 0.0;
};

/// ‖[J, P] ∓ 2J‖_F for the better sign. Both operators are taken as given; to
/// restrict to a subspace pass Q†JQ and Q†PQ.
ParityResidual parity_commutator_residual(const ComplexMatrix& J, const ComplexMatrix& P);

struct JordanFormReport {
  int subspace_dim = 0;
  RealVector cluster_energies;
  double next_gap = 0.0;          // distance from the cluster top to the next level
  ComplexMatrix restricted_J;     // Q†JQ on the ground cluster
  int nilpotency_index = 0;       // smallest k with (Q†JQ)^k ≈ 0, or 0 if none ≤ N
  int rank = 0;
  bool single_chain = false;
  double power_residual = 0.0;    // ‖(Q†JQ)^N‖_F / ‖Q†JQ‖_F^N
  int parity_branch = 0;          // 0 when no parity operator was supplied
  double parity_residual = 0.0;   // NaN when no parity operator was supplied
};

/// Relative tolerances used by jordan_form_report.
struct JordanTolerances {
  double nilpotent = 1e-8;  // ‖R^k‖ ≤ tol · ‖R‖^k
  double rank = 1e-8;       // singular values ≤ tol · σ_max count as zero
};

/// Clusters the spectrum of H (consecutive gaps ≤ degeneracy_tol), projects J
/// onto the ground cluster and certifies its Jordan structure. `parity`, when
/// given, is restricted the same way for the parity-commutator residual.
JordanFormReport jordan_form_report(const ComplexMatrix& H, const ComplexMatrix& J,
                                    double degeneracy_tol, const ComplexMatrix* parity = nullptr,
                                    JordanTolerances tol = {});

/// 1e-6 × (E_max − E_min).
double default_degeneracy_tol(const RealVector& spectrum);

}  // namespace nhprobe
