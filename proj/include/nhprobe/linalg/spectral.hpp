#pragma once

#include "nhprobe/linalg/matrix.hpp"

namespace nhprobe::linalg {

/// Relative Hermiticity tolerance accepted by the Hermitian routines.
inline constexpr double kHermitianTol = 1e-10;

struct HermEigDecomposition {
  RealVector eigenvalues;     // ascending
  ComplexMatrix eigenvectors; // columns, unitary
};

HermEigDecomposition herm_eig(const ComplexMatrix& a);

/// Eigenvalues only, ascending. Cheaper than herm_eig for large inputs.
RealVector herm_eigenvalues(const ComplexMatrix& a);

/// n·ε·max|λ|: eigenvalues at or below this are rounding noise, and psd_sqrt
/// maps them to exact zeros.
double roundoff_floor(const RealVector& eigenvalues);

/// Principal square root of a Hermitian PSD matrix. Eigenvalues in
/// [-clamp_tol, 0) are clamped to zero; anything lower raises NotPsdError.
ComplexMatrix psd_sqrt(const ComplexMatrix& a, double clamp_tol);

/// The clamped spectrum used by psd_sqrt: square roots of the eigenvalues
/// (all ≥ 0) and the eigenvectors.
HermEigDecomposition psd_sqrt_decomposed(const ComplexMatrix& a, double clamp_tol);

/// (Tr √(√ρ₀ ρ √ρ₀))², clipped to [0, 1].
double uhlmann_fidelity(const ComplexMatrix& rho0, const ComplexMatrix& rhot,
                        double clamp_tol);

/// Σ √max(λ_i, 0) for the eigenvalues of a Hermitian PSD matrix, raising
/// NotPsdError below -clamp_tol.
double trace_sqrt(const ComplexMatrix& a, double clamp_tol);

}  // namespace nhprobe::linalg
