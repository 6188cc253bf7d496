#pragma once

// Second-quantized operators as matrices on the full many-body space.
//
// Basis convention: occupation-number (or clock) basis with mode/site 0 as the
// least-significant digit. Fermions use a Jordan–Wigner string over the modes
// with a lower index, so a_0 carries no string. Parafermions come from Z_d
// clock operators σ, τ (στ = ωτσ) through the Fradkin–Kadanoff string:
//
//   α_{2j-1} = (∏_{k<j} τ_k) σ_j,   α_{2j} = e^{iπ(d-1)/d} (∏_{k<j} τ_k) σ_j τ_j
//
// The phase on the even operators makes α^d = 1 exactly.

#include <Eigen/SparseCore>
#include <vector>

#include "nhprobe/linalg/matrix.hpp"

namespace nhprobe {

using SparseOperator = Eigen::SparseMatrix<cplx>;

enum class Statistics { Fermion, Parafermion };

struct FockSpace {
  int n_modes = 0;    // fermion modes, or clock sites for parafermions
  int local_dim = 2;  // 2 for fermions, d for parafermions
  Eigen::Index dim = 0;

  /// Throws Capacity when local_dim^n_modes exceeds kMaxDim.
  static FockSpace make(int n_modes, int local_dim);
};

class ModeOperatorSet {
 public:
  ModeOperatorSet(FockSpace space, Statistics statistics,
                  std::vector<SparseOperator> annihilators);

  const FockSpace& space() const { return space_; }
  Statistics statistics() const { return statistics_; }
  Eigen::Index dim() const { return space_.dim; }
  /// Number of operators: n_modes for fermions, 2·sites for parafermions.
  int count() const { return static_cast<int>(ops_.size()); }
  /// Z_d order (2 for fermions).
  int order() const { return space_.local_dim; }

  const SparseOperator& sparse(int j) const { return ops_.at(static_cast<std::size_t>(j)); }
  /// Dense a_j (or α_j). Materialized on request.
  ComplexMatrix annihilator(int j) const { return ComplexMatrix(sparse(j)); }
  std::vector<ComplexMatrix> annihilators() const;

  SparseOperator identity() const;

 private:
  FockSpace space_;
  Statistics statistics_;
  std::vector<SparseOperator> ops_;
};

ModeOperatorSet build_fermion_modes(int n_modes);

/// `sites` clock sites carrying 2·sites parafermion operators α_1 … α_{2·sites}.
ModeOperatorSet build_parafermion_modes(int sites, int d);

/// c_{2j-1} = a_j + a_j†, c_{2j} = (a_j − a_j†)/i, in that order.
std::vector<ComplexMatrix> majorana_modes(const ModeOperatorSet& ops);

/// P = ∏_j (1 − 2 a_j† a_j).
ComplexMatrix total_parity(const ModeOperatorSet& ops);

/// P_γ = iγγ′ after checking γ, γ′ are Hermitian, square to one and
/// anticommute (each within 1e-8, entrywise).
ComplexMatrix ground_parity_operator(const ComplexMatrix& gamma,
                                     const ComplexMatrix& gamma_prime);

/// Σ_m (w_m a_m† + w_m* a_m): the fermion-odd Hermitian operator with
/// particle coefficients w. Squares to ‖w‖² · I.
SparseOperator lift_linear(const ModeOperatorSet& ops, const ComplexVector& w);

/// Global Z_d charge ∏_j τ_j of the clock representation.
SparseOperator clock_charge(const ModeOperatorSet& ops);

/// Largest entrywise residual of each defining relation, over all mode pairs.
struct AlgebraReport {
  double anticommutator = 0.0;  // fermions: {a_i, a_j†} − δ_ij, {a_i, a_j}
  double power = 0.0;           // parafermions: α^d − 1
  double adjoint = 0.0;         // parafermions: α† − α^{d−1}
  double exchange = 0.0;        // parafermions: α_j α_k − ω^{sgn(k−j)} α_k α_j
  double max() const;
};

AlgebraReport algebra_check(const ModeOperatorSet& ops);

/// max |entry| of a sparse operator.
double max_abs(const SparseOperator& a);

}  // namespace nhprobe
