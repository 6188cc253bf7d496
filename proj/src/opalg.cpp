#include "nhprobe/opalg.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "nhprobe/error.hpp"

namespace nhprobe {
namespace {

using Triplet = Eigen::Triplet<cplx>;

SparseOperator from_triplets(Eigen::Index dim, const std::vector<Triplet>& t) {
  SparseOperator m(dim, dim);
  m.setFromTriplets(t.begin(), t.end());
  m.makeCompressed();
  return m;
}

Eigen::Index ipow(int base, int exp) {
  Eigen::Index r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

SparseOperator sparse_power(const SparseOperator& a, int n) {
  SparseOperator r(a.rows(), a.cols());
  r.setIdentity();
  for (int i = 0; i < n; ++i) r = (r * a).pruned();
  return r;
}

}  // namespace

FockSpace FockSpace::make(int n_modes, int local_dim) {
  if (n_modes < 1) throw invalid_argument("FockSpace: n_modes must be >= 1");
  if (local_dim < 2) throw invalid_argument("FockSpace: local dimension must be >= 2");
  Eigen::Index dim = 1;
  for (int i = 0; i < n_modes; ++i) {
    dim *= local_dim;
    if (dim > kMaxDim) {
      throw Error(ErrorKind::Capacity, "FockSpace: " + std::to_string(local_dim) + "^" +
                                           std::to_string(n_modes) + " exceeds the dimension cap " +
                                           std::to_string(kMaxDim));
    }
  }
  return FockSpace{n_modes, local_dim, dim};
}

ModeOperatorSet::ModeOperatorSet(FockSpace space, Statistics statistics,
                                 std::vector<SparseOperator> annihilators)
    : space_(space), statistics_(statistics), ops_(std::move(annihilators)) {}

std::vector<ComplexMatrix> ModeOperatorSet::annihilators() const {
  std::vector<ComplexMatrix> out;
  out.reserve(ops_.size());
  for (const auto& op : ops_) out.emplace_back(op);
  return out;
}

SparseOperator ModeOperatorSet::identity() const {
  SparseOperator id(dim(), dim());
  id.setIdentity();
  return id;
}

ModeOperatorSet build_fermion_modes(int n_modes) {
  if (n_modes > 12) {
    throw Error(ErrorKind::Capacity, "build_fermion_modes: at most 12 modes are supported");
  }
  const FockSpace space = FockSpace::make(n_modes, 2);
  std::vector<SparseOperator> ops;
  ops.reserve(static_cast<std::size_t>(n_modes));
  for (int j = 0; j < n_modes; ++j) {
    const std::uint64_t bit = std::uint64_t{1} << j;
    std::vector<Triplet> t;
    t.reserve(static_cast<std::size_t>(space.dim / 2));
    for (std::uint64_t s = 0; s < static_cast<std::uint64_t>(space.dim); ++s) {
      if ((s & bit) == 0) continue;
      const int below = std::popcount(s & (bit - 1));
      t.emplace_back(static_cast<Eigen::Index>(s ^ bit), static_cast<Eigen::Index>(s),
                     below % 2 == 0 ? 1.0 : -1.0);
    }
    ops.push_back(from_triplets(space.dim, t));
  }
  return ModeOperatorSet(space, Statistics::Fermion, std::move(ops));
}

ModeOperatorSet build_parafermion_modes(int sites, int d) {
  if (d < 2) throw invalid_argument("build_parafermion_modes: d must be >= 2");
  const FockSpace space = FockSpace::make(sites, d);
  const double two_pi_over_d = 2.0 * std::numbers::pi / d;

  auto digit = [&](Eigen::Index s, int j) { return static_cast<int>((s / ipow(d, j)) % d); };

  std::vector<SparseOperator> clock, shift;
  for (int j = 0; j < sites; ++j) {
    std::vector<Triplet> ct, st;
    const Eigen::Index stride = ipow(d, j);
    for (Eigen::Index s = 0; s < space.dim; ++s) {
      const int k = digit(s, j);
      ct.emplace_back(s, s, std::polar(1.0, two_pi_over_d * k));
      const Eigen::Index target = s + ((k + 1) % d - k) * stride;
      st.emplace_back(target, s, 1.0);
    }
    clock.push_back(from_triplets(space.dim, ct));
    shift.push_back(from_triplets(space.dim, st));
  }

  const cplx even_phase = std::polar(1.0, std::numbers::pi * (d - 1) / d);
  std::vector<SparseOperator> ops;
  SparseOperator string(space.dim, space.dim);
  string.setIdentity();
  for (int j = 0; j < sites; ++j) {
    SparseOperator odd = (string * clock[j]).pruned();
    SparseOperator even = (even_phase * (odd * shift[j])).pruned();
    ops.push_back(std::move(odd));
    ops.push_back(std::move(even));
    string = (string * shift[j]).pruned();
  }
  return ModeOperatorSet(space, Statistics::Parafermion, std::move(ops));
}

std::vector<ComplexMatrix> majorana_modes(const ModeOperatorSet& ops) {
  if (ops.statistics() != Statistics::Fermion) {
    throw invalid_argument("majorana_modes: requires a fermionic operator set");
  }
  const cplx i(0.0, 1.0);
  std::vector<ComplexMatrix> out;
  out.reserve(2 * static_cast<std::size_t>(ops.count()));
  for (int j = 0; j < ops.count(); ++j) {
    const SparseOperator& a = ops.sparse(j);
    const SparseOperator adag = a.adjoint();
    out.emplace_back(ComplexMatrix(a + adag));
    out.emplace_back(ComplexMatrix(-i * (a - adag)));
  }
  return out;
}

ComplexMatrix total_parity(const ModeOperatorSet& ops) {
  if (ops.statistics() != Statistics::Fermion) {
    throw invalid_argument("total_parity: requires a fermionic operator set");
  }
  ComplexMatrix p = ComplexMatrix::Zero(ops.dim(), ops.dim());
  for (Eigen::Index s = 0; s < ops.dim(); ++s) {
    p(s, s) = std::popcount(static_cast<std::uint64_t>(s)) % 2 == 0 ? 1.0 : -1.0;
  }
  return p;
}

ComplexMatrix ground_parity_operator(const ComplexMatrix& gamma,
                                     const ComplexMatrix& gamma_prime) {
  constexpr double tol = 1e-8;
  linalg::require_square_finite(gamma, "ground_parity_operator(gamma)");
  linalg::require_square_finite(gamma_prime, "ground_parity_operator(gamma_prime)");
  if (gamma.rows() != gamma_prime.rows()) {
    throw invalid_argument("ground_parity_operator: operand dimensions differ");
  }
  const auto ident = ComplexMatrix::Identity(gamma.rows(), gamma.cols());
  auto check = [&](double residual, const char* relation) {
    if (residual > tol) {
      throw invalid_argument(std::string("ground_parity_operator: relation ") + relation +
                             " violated (residual " + std::to_string(residual) + ")");
    }
  };
  check((gamma - gamma.adjoint()).cwiseAbs().maxCoeff(), "gamma = gamma^dag");
  check((gamma_prime - gamma_prime.adjoint()).cwiseAbs().maxCoeff(), "gamma' = gamma'^dag");
  check((linalg::matmul(gamma, gamma) - ident).cwiseAbs().maxCoeff(), "gamma^2 = 1");
  check((linalg::matmul(gamma_prime, gamma_prime) - ident).cwiseAbs().maxCoeff(),
        "gamma'^2 = 1");
  check(linalg::anticommutator(gamma, gamma_prime).cwiseAbs().maxCoeff(),
        "{gamma, gamma'} = 0");
  return cplx(0.0, 1.0) * linalg::matmul(gamma, gamma_prime);
}

SparseOperator lift_linear(const ModeOperatorSet& ops, const ComplexVector& w) {
  if (ops.statistics() != Statistics::Fermion) {
    throw invalid_argument("lift_linear: requires a fermionic operator set");
  }
  if (w.size() != ops.count()) {
    throw invalid_argument("lift_linear: coefficient vector has " + std::to_string(w.size()) +
                           " entries for " + std::to_string(ops.count()) + " modes");
  }
  SparseOperator out(ops.dim(), ops.dim());
  for (int m = 0; m < ops.count(); ++m) {
    if (w[m] == cplx(0.0)) continue;
    const SparseOperator& a = ops.sparse(m);
    SparseOperator term = w[m] * SparseOperator(a.adjoint()) + std::conj(w[m]) * a;
    out += term;
  }
  out.makeCompressed();
  return out;
}

SparseOperator clock_charge(const ModeOperatorSet& ops) {
  if (ops.statistics() != Statistics::Parafermion) {
    throw invalid_argument("clock_charge: requires a parafermionic operator set");
  }
  // α_{2j-1}† α_{2j} = e^{iπ(d-1)/d} τ_j, so the product over sites is the
  // global shift up to a constant phase.
  const int d = ops.order();
  const cplx phase = std::polar(1.0, -std::numbers::pi * (d - 1) / d);
  SparseOperator q = ops.identity();
  for (int j = 0; j < ops.count() / 2; ++j) {
    SparseOperator tau = phase * (SparseOperator(ops.sparse(2 * j).adjoint()) * ops.sparse(2 * j + 1));
    q = (q * tau).pruned();
  }
  return q;
}

double max_abs(const SparseOperator& a) {
  double m = 0.0;
  for (int k = 0; k < a.outerSize(); ++k) {
    for (SparseOperator::InnerIterator it(a, k); it; ++it) m = std::max(m, std::abs(it.value()));
  }
  return m;
}

double AlgebraReport::max() const {
  return std::max({anticommutator, power, adjoint, exchange});
}

AlgebraReport algebra_check(const ModeOperatorSet& ops) {
  AlgebraReport report;
  const SparseOperator id = ops.identity();
  const int n = ops.count();
  if (ops.statistics() == Statistics::Fermion) {
    for (int i = 0; i < n; ++i) {
      const SparseOperator& ai = ops.sparse(i);
      for (int j = 0; j < n; ++j) {
        const SparseOperator& aj = ops.sparse(j);
        const SparseOperator ajd = aj.adjoint();
        SparseOperator mixed = ai * ajd + ajd * ai;
        if (i == j) mixed -= id;
        const SparseOperator same = ai * aj + aj * ai;
        report.anticommutator =
            std::max({report.anticommutator, max_abs(mixed), max_abs(same)});
      }
    }
    return report;
  }

  const int d = ops.order();
  const cplx omega = std::polar(1.0, 2.0 * std::numbers::pi / d);
  for (int j = 0; j < n; ++j) {
    const SparseOperator& a = ops.sparse(j);
    report.power = std::max(report.power, max_abs(sparse_power(a, d) - id));
    report.adjoint =
        std::max(report.adjoint, max_abs(SparseOperator(a.adjoint()) - sparse_power(a, d - 1)));
    for (int k = j + 1; k < n; ++k) {
      const SparseOperator& b = ops.sparse(k);
      const SparseOperator diff = a * b - omega * (b * a);
      report.exchange = std::max(report.exchange, max_abs(diff));
    }
  }
  return report;
}

}  // namespace nhprobe
