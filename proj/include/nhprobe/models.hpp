#pragma once

// Many-body Hamiltonians for the four model families, plus their analytic bulk
// spectra and phase boundaries. Open boundary conditions throughout.

#include <string>
#include <variant>
#include <vector>

#include "nhprobe/opalg.hpp"

namespace nhprobe {

/// H = Σ_{j<N} [−t(a_j†a_{j+1} + h.c.) + Δ(a_j a_{j+1} + h.c.)] − μ Σ_j (a_j†a_j − 1/2)
struct KitaevSpec {
  int sites = 8;
  double t = 1.0;
  double mu = 0.0;
  double delta = 1.0;
};

/// Two Kitaev chains a (modes 0..N−1) and b (modes N..2N−1) joined end to end
/// through the coupling −w(a_N†b_1 + b_N†a_1 − a_N b_1 − b_N a_1 + h.c.).
struct DoubleKitaevSpec {
  KitaevSpec chain{4, 1.0, 0.4, 1.0};
  double w = 0.0;
};

/// Spinful Rashba wire. Mode index 2·site + s with s = 0 for ↑ and 1 for ↓.
struct NanowireSpec {
  int sites = 5;
  double t = 1.0;
  double mu = 0.5;
  double alpha = 0.5;
  double V = 1.5;
  double delta = 1.0;
};

/// Z_d parafermion chain on `sites` clock sites (2·sites parafermions).
struct ParafermionSpec {
  int sites = 5;
  double h = 1.0;
  double g = 1.0;
  int d = 3;
};

using ModelSpec = std::variant<KitaevSpec, DoubleKitaevSpec, NanowireSpec, ParafermionSpec>;

/// "kitaev", "double_kitaev", "nanowire" or "parafermion".
std::string model_name(const ModelSpec& spec);

/// Throws InvalidArgument on non-finite couplings, N < 2, Δ < 0 (Kitaev) or
/// d ≠ 3 (parafermion).
void validate(const ModelSpec& spec);

/// The operator set a spec expects: fermion modes (N, 2N, 2N) or parafermion
/// clock sites.
ModeOperatorSet build_modes(const ModelSpec& spec);

ComplexMatrix build_hamiltonian(const ModelSpec& spec, const ModeOperatorSet& ops);

/// (i/2) Σ_j [−μ c_{2j−1}c_{2j}] + (i/2) Σ_{j<N} [(Δ+t) c_{2j}c_{2j+1} + (Δ−t) c_{2j−1}c_{2j+2}]
ComplexMatrix majorana_form_hamiltonian(const ModelSpec& spec, const ModeOperatorSet& ops);

struct BulkSpectrum {
  double k = 0.0;
  std::vector<double> branches;  // ascending
};

/// Infinite-chain dispersion: two branches for Kitaev, four for the nanowire.
BulkSpectrum bulk_spectrum(const ModelSpec& spec, double k);

/// Critical value of the natural control parameter: μ_c = 2|t| (Kitaev),
/// V_c = √(Δ² + μ²) (nanowire), g_c = h (parafermion). DoubleKitaev throws
/// Unsupported.
double phase_boundary(const ModelSpec& spec);

/// Name of the parameter phase_boundary refers to ("mu", "V" or "g").
std::string phase_boundary_parameter(const ModelSpec& spec);

/// Which side of the analytic boundary a spec sits on, and its relative
/// distance from it (|x − x_c| / x_c). Throws Unsupported for DoubleKitaev.
struct PhaseSide {
  bool topological = false;
  double relative_distance = 0.0;
};
PhaseSide classify_phase(const ModelSpec& spec);

}  // namespace nhprobe
