#pragma once

// Closed-form reference results for small clusters at and near an
// exceptional point. Used to cross-check the numerical quench engine.

#include "nhprobe/linalg/matrix.hpp"

namespace nhprobe {

/// e^{−i(E + λJ)t} a for the N×N Jordan generator [J]_{ij} = δ_{i−1,j}:
///   ψ_m = e^{−iEt} Σ_{n<m} (−iλt)ⁿ/n! a_{m−n}.
ComplexVector jordan_oracle_state(const ComplexVector& a, double lambda, double E, double t);

/// Unnormalized ρ(t) = ½ e^{−iDt} e^{iD†t} for D = [[0, λ′], [λ, 0]]:
///   ½ [[c² + (λ′/λ)s²,  (i/2)(√(λ/λ′) − √(λ′/λ)) sin 2ωt],
///      [conj,           c² + (λ/λ′)s²]]
/// with ω = √(λλ′), c = cos ωt, s = sin ωt. λ′ = 0 uses the polynomial limit
/// ½[[1, iλt], [−iλt, 1 + λ²t²]].
ComplexMatrix two_level_oracle_rho(double lambda, double lambda_prime, double t);

/// First-order ρ(t) ≈ I/N + R(t) for diag(E) + λJ + λ′J†, with
///   R_{i,i−1} = (λ − λ′)/(N ΔE_i) (e^{−iΔE_i t} − 1),  R_{i−1,i} = conj,
/// ΔE_i = E_i − E_{i−1}. Throws SingularParameter on repeated energies.
ComplexMatrix trivial_phase_firstorder(const RealVector& E, double lambda, double lambda_prime, double t);

/// min_i ΔE_i / max(λ, λ′): below 10 the first-order formula is unreliable.
double firstorder_gap_ratio(const RealVector& E, double lambda, double lambda_prime);

/// N×N Jordan generator with ones on the subdiagonal.
ComplexMatrix jordan_generator(int n);

}  // namespace nhprobe
