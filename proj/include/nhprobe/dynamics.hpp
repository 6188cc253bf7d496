#pragma once

// Thermal initial states, non-unitary quench evolution and the Loschmidt echo.
//
// After the quench H → 𝓗 = H + λJ the state evolves as
//   ρ(t) = M ρ₀ M† / Tr(M ρ₀ M†),   M = e^{−i𝓗t},
// and L(t) = (Tr √(√ρ₀ ρ(t) √ρ₀))².

#include <optional>
#include <vector>

#include "nhprobe/models.hpp"
#include "nhprobe/probes.hpp"

namespace nhprobe {

class DensityMatrix {
 public:
  /// Validates Hermiticity (relative), trace and lowest eigenvalue against tol.
  DensityMatrix(ComplexMatrix matrix, double tol);

  const ComplexMatrix& matrix() const { return matrix_; }
  double tol() const { return tol_; }
  Eigen::Index dim() const { return matrix_.rows(); }

  /// Skips the eigenvalue check; for states already known to be valid.
  static DensityMatrix trusted(ComplexMatrix matrix, double tol);

 private:
  DensityMatrix() = default;
  ComplexMatrix matrix_;
  double tol_ = 1e-10;
};

inline constexpr double kDensityTol = 1e-10;

/// e^{−βH}/Tr e^{−βH}, evaluated in the eigenbasis of H with the ground
/// energy shifted out.
DensityMatrix thermal_state(const ComplexMatrix& H, double beta);

struct EvolvedState {
  double time = 0.0;
  double trace = 1.0;  // Tr(Mρ₀M†) before normalization
  DensityMatrix rho;
};

/// Reference propagation. Each time must be a non-negative multiple of `step`
/// (within 1e-9 relative) and the list must be ascending.
std::vector<EvolvedState> evolve_quench(const ComplexMatrix& H_post, const DensityMatrix& rho0,
                                        const std::vector<double>& times, double step);

double loschmidt_echo(const DensityMatrix& rho0, const DensityMatrix& rhot);

struct TimeGrid {
  double step = 0.05;
  double sample = 1.0;
  double horizon = 200.0;

  void validate() const;
  /// 0, sample, 2·sample, … up to horizon.
  std::vector<double> readouts() const;
  /// sample / step, rounded; throws unless sample is a multiple of step.
  int steps_per_sample() const;
};

struct QuenchResult {
  std::vector<double> times;
  std::vector<double> le_values;
  std::vector<double> norm_traces;  // cumulative Tr(Mρ₀M†)
  double steady_average = 0.0;
  double t0 = 100.0;
  double t1 = 200.0;
  double beta = 5.0;
  TimeGrid grid;
  std::optional<ModelSpec> model;
  std::optional<ProbeSpec> probe;
};

/// Trapezoidal mean of L(t) over [t0, t1], interpolating linearly at the ends.
double steady_average(const QuenchResult& result, double t0, double t1);

/// L(t) on a time grid, computed in the eigenbasis of H.
///
/// With H = V E V†, ρ₀ = V diag(p) V†, the evolved columns X = Ũ(t) diag(√p)
/// (Ũ the propagator in the eigenbasis) give
///   L(t) = (Σ σ_i(diag(√p) X))² / ‖X‖_F²,
/// so only products with Ũ(sample) are needed per readout. Ũ(sample) is
/// formed once from e^{−i𝓗̃·step}. States whose cumulative Boltzmann weight
/// falls below `dropped_mass` are left out of ρ₀.
struct QuenchOptions {
  double beta = 5.0;
  TimeGrid grid;
  double t0 = 100.0;
  double t1 = 200.0;
  double dropped_mass = 0.0;
};

QuenchResult quench_echo(const ComplexMatrix& H, const ComplexMatrix& perturbation,
                         const QuenchOptions& options);

}  // namespace nhprobe
