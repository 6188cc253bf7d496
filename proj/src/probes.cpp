#include "nhprobe/probes.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "nhprobe/error.hpp"
#include "nhprobe/linalg/spectral.hpp"

namespace nhprobe {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void require_fermions(const ModeOperatorSet& ops, int min_modes, const char* what) {
  if (ops.statistics() != Statistics::Fermion || ops.count() < min_modes) {
    throw invalid_argument(std::string("build_probe: ") + what + " needs at least " +
                           std::to_string(min_modes) + " fermion modes");
  }
}

// a_first + a_first† + s(a_last − a_last†)
SparseOperator edge_pair(const ModeOperatorSet& ops, int first, int last, double s) {
  const SparseOperator& a = ops.sparse(first);
  const SparseOperator& b = ops.sparse(last);
  SparseOperator ad = a.adjoint();
  SparseOperator bd = b.adjoint();
  return a + ad + s * (b - bd);
}

struct Term {
  cplx coeff;
  int mode;
  bool dagger;
};

SparseOperator linear_combination(const ModeOperatorSet& ops, std::initializer_list<Term> terms) {
  SparseOperator out(ops.dim(), ops.dim());
  for (const Term& t : terms) {
    const SparseOperator& a = ops.sparse(t.mode);
    if (t.dagger) {
      out += t.coeff * SparseOperator(a.adjoint());
    } else {
      out += t.coeff * a;
    }
  }
  return out;
}

SparseOperator aux_probe(const NanowireAuxProbe& p, const ModeOperatorSet& ops) {
  require_fermions(ops, 4, "nanowire_aux");
  const cplx i(0.0, 1.0);
  const cplx ep = std::polar(1.0, p.phi);
  const cplx em = std::conj(ep);
  const int up1 = 0, dn1 = 1;
  const int upN = ops.count() - 2, dnN = ops.count() - 1;
  switch (p.variant) {
    case 1:
      return linear_combination(ops, {{i * ep, up1, true}, {-i * em, up1, false},
                                      {-i * ep, dnN, true}, {-i * em, dnN, false}});
    case 2:
      return linear_combination(ops, {{i * ep, up1, true}, {-i * em, up1, false},
                                      {-em, upN, true}, {ep, upN, false}});
    case 3:
      return linear_combination(ops, {{i * ep, up1, true}, {-i * em, up1, false},
                                      {em, dn1, true}, {ep, dn1, false}});
    case 4:
      return linear_combination(ops, {{i * em, upN, true}, {-i * ep, upN, false},
                                      {-ep, dnN, true}, {-em, dnN, false}});
    default:
      throw invalid_argument("nanowire_aux: variant must be 1..4");
  }
}

SparseOperator mzm_probe(const ModeOperatorSet& ops, const ZeroModePair& zm) {
  require_fermions(ops, 2 * zm.modes_per_site, "nanowire_mzm");
  const int mps = zm.modes_per_site;
  if (ops.count() % mps != 0) throw invalid_argument("build_probe: mode count does not match zero modes");
  const int sites = ops.count() / mps;
  const ComplexVector left = site_block(zm.gamma, mps, 0);
  const ComplexVector right = site_block(zm.gamma_prime, mps, zm.sites - 1);
  if (left.norm() == 0.0 || right.norm() == 0.0) {
    throw Error(ErrorKind::NotTopological, "build_probe: zero mode has no weight on its edge site");
  }
  ComplexVector w = ComplexVector::Zero(ops.count());
  ComplexVector wp = ComplexVector::Zero(ops.count());
  w.head(mps) = left / left.norm();
  wp.segment(static_cast<Eigen::Index>(sites - 1) * mps, mps) = right / right.norm();
  const SparseOperator gamma = lift_linear(ops, w);
  const SparseOperator gamma_prime = lift_linear(ops, wp);
  return gamma + cplx(0.0, 1.0) * gamma_prime;
}

SparseOperator parafermion_probe(const ModeOperatorSet& ops, bool exact) {
  if (ops.statistics() != Statistics::Parafermion) {
    throw invalid_argument("build_probe: parafermion probe needs parafermion operators");
  }
  SparseOperator j = ops.sparse(0);
  if (exact) j += std::polar(1.0, -std::numbers::pi / 3.0) * ops.sparse(ops.count() - 1);
  return j;
}

void require_positive(double x, const char* name) {
  if (!std::isfinite(x) || x <= 0.0) {
    throw invalid_argument(std::string("probe parameter '") + name + "' must be finite and > 0");
  }
}

void require_finite(double x, const char* name) {
  if (!std::isfinite(x)) throw invalid_argument(std::string("probe parameter '") + name + "' is not finite");
}

}  // namespace

std::string probe_name(const ProbeSpec& spec) {
  return std::visit(overloaded{
                        [](const KitaevEdgeProbe&) { return std::string("kitaev_edge"); },
                        [](const KitaevRandomizedProbe&) { return std::string("kitaev_randomized"); },
                        [](const DoubleKitaevEdgeProbe&) { return std::string("double_kitaev_edge"); },
                        [](const NanowireMzmProbe&) { return std::string("nanowire_mzm"); },
                        [](const NanowireAuxProbe&) { return std::string("nanowire_aux"); },
                        [](const ParafermionApproxProbe&) { return std::string("parafermion_approx"); },
                        [](const ParafermionExactProbe&) { return std::string("parafermion_exact"); },
                    },
                    spec);
}

void validate(const ProbeSpec& spec) {
  std::visit(overloaded{
                 [](const KitaevEdgeProbe& p) { require_positive(p.lambda, "lambda"); },
                 [](const KitaevRandomizedProbe& p) {
                   require_positive(p.lambda, "lambda");
                   require_finite(p.lambda_prime, "lambda_prime");
                   if (p.lambda_prime < 0.0) throw invalid_argument("probe parameter 'lambda_prime' must be >= 0");
                 },
                 [](const DoubleKitaevEdgeProbe& p) {
                   require_finite(p.kappa1, "kappa1");
                   require_finite(p.kappa2, "kappa2");
                 },
                 [](const NanowireMzmProbe& p) { require_positive(p.lambda, "lambda"); },
                 [](const NanowireAuxProbe& p) {
                   require_positive(p.lambda, "lambda");
                   require_finite(p.phi, "phi");
                   if (p.variant < 1 || p.variant > 4) throw invalid_argument("nanowire_aux: variant must be 1..4");
                 },
                 [](const ParafermionApproxProbe& p) { require_positive(p.lambda, "lambda"); },
                 [](const ParafermionExactProbe& p) { require_positive(p.lambda, "lambda"); },
             },
             spec);
}

bool needs_zero_modes(const ProbeSpec& spec) { return std::holds_alternative<NanowireMzmProbe>(spec); }

ComplexMatrix build_probe(const ProbeSpec& spec, const ModeOperatorSet& ops,
                          const std::optional<ZeroModePair>& zm) {
  validate(spec);
  const SparseOperator j = std::visit(
      overloaded{
          [&](const KitaevEdgeProbe& p) -> SparseOperator {
            require_fermions(ops, 2, "kitaev_edge");
            return p.lambda * edge_pair(ops, 0, ops.count() - 1, p.minus_branch ? -1.0 : 1.0);
          },
          [&](const KitaevRandomizedProbe& p) -> SparseOperator {
            require_fermions(ops, 2, "kitaev_randomized");
            const SparseOperator e = edge_pair(ops, 0, ops.count() - 1, 1.0);
            return p.lambda * e + p.lambda_prime * SparseOperator(e.adjoint());
          },
          [&](const DoubleKitaevEdgeProbe& p) -> SparseOperator {
            require_fermions(ops, 4, "double_kitaev_edge");
            if (ops.count() % 2 != 0) throw invalid_argument("double_kitaev_edge: odd mode count");
            const int n = ops.count() / 2;
            return p.kappa1 * edge_pair(ops, 0, n - 1, 1.0) + p.kappa2 * edge_pair(ops, n, 2 * n - 1, 1.0);
          },
          [&](const NanowireMzmProbe& p) -> SparseOperator {
            if (!zm) throw invalid_argument("build_probe: nanowire_mzm requires zero modes");
            return p.lambda * mzm_probe(ops, *zm);
          },
          [&](const NanowireAuxProbe& p) -> SparseOperator { return p.lambda * aux_probe(p, ops); },
          [&](const ParafermionApproxProbe& p) -> SparseOperator {
            return p.lambda * parafermion_probe(ops, false);
          },
          [&](const ParafermionExactProbe& p) -> SparseOperator {
            return p.lambda * parafermion_probe(ops, true);
          },
      },
      spec);
  return ComplexMatrix(j);
}

ParityResidual parity_commutator_residual(const ComplexMatrix& J, const ComplexMatrix& P) {
  linalg::require_square_finite(J, "parity_commutator_residual(J)");
  linalg::require_square_finite(P, "parity_commutator_residual(P)");
  if (J.rows() != P.rows()) throw invalid_argument("parity_commutator_residual: shapes differ");
  const ComplexMatrix c = linalg::commutator(J, P);
  const double plus = (c - 2.0 * J).norm();
  const double minus = (c + 2.0 * J).norm();
  return plus <= minus ? ParityResidual{+1, plus} : ParityResidual{-1, minus};
}

double default_degeneracy_tol(const RealVector& spectrum) {
  if (spectrum.size() == 0) return 0.0;
  return 1e-6 * (spectrum.maxCoeff() - spectrum.minCoeff());
}

JordanFormReport jordan_form_report(const ComplexMatrix& H, const ComplexMatrix& J,
                                    double degeneracy_tol, const ComplexMatrix* parity,
                                    JordanTolerances tol) {
  if (!(degeneracy_tol > 0.0)) throw invalid_argument("jordan_form_report: degeneracy_tol must be > 0");
  linalg::require_square_finite(J, "jordan_form_report(J)");
  if (J.rows() != H.rows()) throw invalid_argument("jordan_form_report: H and J differ in shape");
  const linalg::HermEigDecomposition eig = linalg::herm_eig(H);
  const Eigen::Index n = eig.eigenvalues.size();

  Eigen::Index size = 1;
  while (size < n && eig.eigenvalues[size] - eig.eigenvalues[size - 1] <= degeneracy_tol) ++size;

  JordanFormReport r;
  r.subspace_dim = static_cast<int>(size);
  r.cluster_energies = eig.eigenvalues.head(size);
  r.next_gap = size < n ? eig.eigenvalues[size] - eig.eigenvalues[size - 1]
                        : std::numeric_limits<double>::infinity();
  const ComplexMatrix q = eig.eigenvectors.leftCols(size);
  r.restricted_J = q.adjoint() * J * q;

  const double norm = r.restricted_J.norm();
  if (norm > 0.0) {
    ComplexMatrix power = ComplexMatrix::Identity(size, size);
    for (int k = 1; k <= size; ++k) {
      power = power * r.restricted_J;
      const double rel = power.norm() / std::pow(norm, k);
      if (k == size) r.power_residual = rel;
      if (r.nilpotency_index == 0 && rel <= tol.nilpotent) r.nilpotency_index = k;
    }
    const RealVector sv = Eigen::JacobiSVD<ComplexMatrix>(r.restricted_J).singularValues();
    for (Eigen::Index k = 0; k < sv.size(); ++k) {
      if (sv[k] > tol.rank * sv[0]) ++r.rank;
    }
  } else {
    r.nilpotency_index = 1;
  }
  r.single_chain = size >= 2 && r.rank == size - 1 && r.nilpotency_index == size;

  r.parity_residual = std::numeric_limits<double>::quiet_NaN();
  if (parity) {
    if (parity->rows() != H.rows()) throw invalid_argument("jordan_form_report: parity has wrong shape");
    const ComplexMatrix p = q.adjoint() * (*parity) * q;
    const ParityResidual pr = parity_commutator_residual(r.restricted_J, p);
    r.parity_branch = pr.branch_sign;
    r.parity_residual = pr.residual;
  }
  return r;
}

}  // namespace nhprobe
