#pragma once

// Single-particle Bogoliubov–de Gennes description of the quadratic models.
//
// For H = Σ h_ij c_i†c_j + Σ P_ij c_i c_j + h.c. the Nambu matrix in the basis
// Ψ = (c, c†) is B = [[h, A†], [A, −hᵀ]] with A = P − Pᵀ, so that
// H = ½Ψ†BΨ + ½Tr h. BdgMatrix stores B/2: its eigenvalues ±ε_k are half the
// many-body quasiparticle energies.

#include <vector>

#include "nhprobe/models.hpp"

namespace nhprobe {

struct QuadraticForm {
  ComplexMatrix hopping;  // h, Hermitian
  ComplexMatrix pairing;  // P, coefficient of c_i c_j
  double constant = 0.0;  // c-number offset of the many-body Hamiltonian
};

/// Kitaev or nanowire quadratic form on N (or 2N) single-particle modes.
QuadraticForm quadratic_form(const ModelSpec& spec);

struct BdgMatrix {
  int sites = 0;
  int modes_per_site = 1;   // 1 for Kitaev, 2 (↑, ↓) for the nanowire
  ComplexMatrix matrix;     // 2D × 2D, particle block first

  int modes() const { return sites * modes_per_site; }
};

BdgMatrix build_bdg(const ModelSpec& spec);

/// Antiunitary particle-hole conjugation τx·K applied to a Nambu vector.
ComplexVector particle_hole_conjugate(const ComplexVector& psi);

/// Many-body energies 2^D obtained by filling quasiparticles, relative to the
/// ground energy, ascending. D ≤ 12.
RealVector folded_spectrum(const BdgMatrix& bdg);

struct EdgeWeights {
  double left = 0.0;
  double right = 0.0;
};

/// Two Majorana operators γ = Σ_m (w_m a_m† + w_m* a_m), each with Σ|w|² = 1
/// so γ² = 1, built from the BdG pair closest to zero energy.
struct ZeroModePair {
  double energies[2] = {0.0, 0.0};  // the two eigenvalues of B/2 nearest zero
  double bulk_gap = 0.0;            // smallest |ε| outside the pair
  ComplexVector gamma;              // particle coefficients w, mode order of the model
  ComplexVector gamma_prime;
  EdgeWeights gamma_weights;
  EdgeWeights gamma_prime_weights;
  int sites = 0;
  int modes_per_site = 1;
  int edge_sites = 1;
  // Nanowire only: fit of the site-1 coefficients of γ to
  // A(ie^{iφ}a†↑ − ie^{−iφ}a↑ + e^{−iφ}a†↓ + e^{iφ}a↓).
  double phi = 0.0;
  double phi_amplitude = 0.0;
  double phi_residual = 0.0;  // relative to the site-1 norm
};

/// Throws NotTopological unless the pair nearest zero sits at least a factor
/// of 10 below the rest of the spectrum. edge_fraction ∈ (0, 0.5].
ZeroModePair extract_zero_modes(const BdgMatrix& bdg, double edge_fraction = 0.1);

/// Coefficients of γ on the first `keep` sites (left = true) or the last `keep`
/// sites, renormalized to unit norm. Other entries are zero.
ComplexVector edge_truncated(const ComplexVector& w, int modes_per_site, int keep, bool left);

/// Single-site coefficient block of a mode vector, as a 1 × modes_per_site row.
ComplexVector site_block(const ComplexVector& w, int modes_per_site, int site);

struct KitaevLocalization {
  cplx x_plus;
  cplx x_minus;
  double max_abs() const;
};

/// x± = (−μ ± √(μ² − 4t² + 4Δ²)) / (2(t + Δ)). Throws SingularParameter when
/// t + Δ = 0.
KitaevLocalization kitaev_x_pm(const ModelSpec& spec);

}  // namespace nhprobe
