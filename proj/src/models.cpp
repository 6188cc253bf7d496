#include "nhprobe/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "nhprobe/error.hpp"

namespace nhprobe {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

SparseOperator dag(const SparseOperator& a) { return a.adjoint(); }

void require_finite(double x, const char* name) {
  if (!std::isfinite(x)) throw invalid_argument(std::string("model parameter '") + name + "' is not finite");
}

void require_sites(int n) {
  if (n < 2) throw invalid_argument("model needs at least 2 sites, got " + std::to_string(n));
}

void validate_kitaev(const KitaevSpec& s) {
  require_sites(s.sites);
  require_finite(s.t, "t");
  require_finite(s.mu, "mu");
  require_finite(s.delta, "delta");
  if (s.delta < 0.0) throw invalid_argument("Kitaev pairing delta must be >= 0");
}

void require_modes(const ModeOperatorSet& ops, Statistics stats, int count, const std::string& model) {
  if (ops.statistics() != stats || ops.count() != count) {
    throw invalid_argument("build_hamiltonian: " + model + " needs " + std::to_string(count) +
                           (stats == Statistics::Fermion ? " fermion" : " parafermion") +
                           " operators, got " + std::to_string(ops.count()));
  }
}

// Adds one open Kitaev chain living on modes offset .. offset+N−1.
void add_kitaev(SparseOperator& h, const ModeOperatorSet& ops, const KitaevSpec& s, int offset) {
  const SparseOperator id = ops.identity();
  for (int j = 0; j < s.sites; ++j) {
    const SparseOperator& a = ops.sparse(offset + j);
    h -= s.mu * (SparseOperator(dag(a) * a) - 0.5 * id);
    if (j + 1 == s.sites) continue;
    const SparseOperator& b = ops.sparse(offset + j + 1);
    SparseOperator hop = dag(a) * b;
    SparseOperator pair = a * b;
    h -= s.t * (hop + dag(hop));
    h += s.delta * (pair + dag(pair));
  }
}

SparseOperator kitaev_sparse(const KitaevSpec& s, const ModeOperatorSet& ops) {
  require_modes(ops, Statistics::Fermion, s.sites, "Kitaev");
  SparseOperator h(ops.dim(), ops.dim());
  add_kitaev(h, ops, s, 0);
  return h;
}

SparseOperator double_kitaev_sparse(const DoubleKitaevSpec& s, const ModeOperatorSet& ops) {
  const int n = s.chain.sites;
  require_modes(ops, Statistics::Fermion, 2 * n, "double Kitaev");
  SparseOperator h(ops.dim(), ops.dim());
  add_kitaev(h, ops, s.chain, 0);
  add_kitaev(h, ops, s.chain, n);
  const SparseOperator& a1 = ops.sparse(0);
  const SparseOperator& an = ops.sparse(n - 1);
  const SparseOperator& b1 = ops.sparse(n);
  const SparseOperator& bn = ops.sparse(2 * n - 1);
  SparseOperator coupling = dag(an) * b1 + dag(b1) * an + dag(bn) * a1 + dag(a1) * bn;
  coupling -= SparseOperator(an * b1) + SparseOperator(dag(b1) * dag(an));
  coupling -= SparseOperator(bn * a1) + SparseOperator(dag(a1) * dag(bn));
  h -= s.w * coupling;
  return h;
}

SparseOperator nanowire_sparse(const NanowireSpec& s, const ModeOperatorSet& ops) {
  require_modes(ops, Statistics::Fermion, 2 * s.sites, "nanowire");
  const cplx i(0.0, 1.0);
  auto a = [&](int site, int spin) -> const SparseOperator& { return ops.sparse(2 * site + spin); };
  // T collects every bracketed term once per spin value; H = (T + T†)/2.
  SparseOperator T(ops.dim(), ops.dim());
  for (int site = 0; site < s.sites; ++site) {
    for (int spin = 0; spin < 2; ++spin) {
      const double sigma = spin == 0 ? 1.0 : -1.0;
      T += (2.0 * s.t - s.mu) * SparseOperator(dag(a(site, spin)) * a(site, spin));
      if (site + 1 < s.sites) {
        T -= (2.0 * s.t - 2.0 * i * s.alpha * sigma) *
             SparseOperator(dag(a(site + 1, spin)) * a(site, spin));
      }
      T += s.V * SparseOperator(dag(a(site, 0)) * a(site, 1));
      T += s.delta * SparseOperator(a(site, 0) * a(site, 1));
    }
  }
  return 0.5 * (T + dag(T));
}

SparseOperator parafermion_sparse(const ParafermionSpec& s, const ModeOperatorSet& ops) {
  require_modes(ops, Statistics::Parafermion, 2 * s.sites, "parafermion");
  if (ops.order() != s.d) throw invalid_argument("build_hamiltonian: parafermion order mismatch");
  const cplx onsite_phase = std::polar(1.0, std::numbers::pi / s.d);
  const cplx bond_phase = std::conj(onsite_phase);
  SparseOperator h(ops.dim(), ops.dim());
  for (int j = 0; j < s.sites; ++j) {
    SparseOperator term = onsite_phase * SparseOperator(dag(ops.sparse(2 * j)) * ops.sparse(2 * j + 1));
    h += s.h * (term + dag(term));
    if (j + 1 == s.sites) continue;
    SparseOperator bond = bond_phase * SparseOperator(dag(ops.sparse(2 * j + 1)) * ops.sparse(2 * j + 2));
    h += s.g * (bond + dag(bond));
  }
  return h;
}

const KitaevSpec& require_kitaev(const ModelSpec& spec, const char* op) {
  const auto* k = std::get_if<KitaevSpec>(&spec);
  if (!k) throw invalid_argument(std::string(op) + ": requires a Kitaev spec, got " + model_name(spec));
  return *k;
}

}  // namespace

std::string model_name(const ModelSpec& spec) {
  return std::visit(overloaded{
                        [](const KitaevSpec&) { return std::string("kitaev"); },
                        [](const DoubleKitaevSpec&) { return std::string("double_kitaev"); },
                        [](const NanowireSpec&) { return std::string("nanowire"); },
                        [](const ParafermionSpec&) { return std::string("parafermion"); },
                    },
                    spec);
}

void validate(const ModelSpec& spec) {
  std::visit(overloaded{
                 [](const KitaevSpec& s) { validate_kitaev(s); },
                 [](const DoubleKitaevSpec& s) {
                   validate_kitaev(s.chain);
                   require_finite(s.w, "w");
                 },
                 [](const NanowireSpec& s) {
                   require_sites(s.sites);
                   for (auto [v, n] : {std::pair{s.t, "t"}, {s.mu, "mu"}, {s.alpha, "alpha"},
                                       {s.V, "V"}, {s.delta, "delta"}}) {
                     require_finite(v, n);
                   }
                 },
                 [](const ParafermionSpec& s) {
                   require_sites(s.sites);
                   require_finite(s.h, "h");
                   require_finite(s.g, "g");
                   if (s.d != 3) throw invalid_argument("parafermion chain is only defined for d = 3");
                 },
             },
             spec);
}

ModeOperatorSet build_modes(const ModelSpec& spec) {
  validate(spec);
  return std::visit(overloaded{
                        [](const KitaevSpec& s) { return build_fermion_modes(s.sites); },
                        [](const DoubleKitaevSpec& s) { return build_fermion_modes(2 * s.chain.sites); },
                        [](const NanowireSpec& s) { return build_fermion_modes(2 * s.sites); },
                        [](const ParafermionSpec& s) { return build_parafermion_modes(s.sites, s.d); },
                    },
                    spec);
}

ComplexMatrix build_hamiltonian(const ModelSpec& spec, const ModeOperatorSet& ops) {
  validate(spec);
  const SparseOperator h = std::visit(
      overloaded{
          [&](const KitaevSpec& s) { return kitaev_sparse(s, ops); },
          [&](const DoubleKitaevSpec& s) { return double_kitaev_sparse(s, ops); },
          [&](const NanowireSpec& s) { return nanowire_sparse(s, ops); },
          [&](const ParafermionSpec& s) { return parafermion_sparse(s, ops); },
      },
      spec);
  return linalg::hermitize(ComplexMatrix(h));
}

ComplexMatrix majorana_form_hamiltonian(const ModelSpec& spec, const ModeOperatorSet& ops) {
  const KitaevSpec& s = require_kitaev(spec, "majorana_form_hamiltonian");
  validate(spec);
  require_modes(ops, Statistics::Fermion, s.sites, "Kitaev");
  const cplx i(0.0, 1.0);
  // c[2j] ↔ c_{2j+1} and c[2j+1] ↔ c_{2j+2} in one-based labels.
  std::vector<SparseOperator> c;
  for (int j = 0; j < s.sites; ++j) {
    const SparseOperator& a = ops.sparse(j);
    c.push_back(a + dag(a));
    c.push_back(-i * (a - dag(a)));
  }
  SparseOperator h(ops.dim(), ops.dim());
  for (int j = 0; j < s.sites; ++j) {
    h += (-s.mu) * SparseOperator(c[2 * j] * c[2 * j + 1]);
    if (j + 1 == s.sites) continue;
    h += (s.delta + s.t) * SparseOperator(c[2 * j + 1] * c[2 * j + 2]);
    h += (s.delta - s.t) * SparseOperator(c[2 * j] * c[2 * j + 3]);
  }
  return ComplexMatrix(0.5 * i * h);
}

BulkSpectrum bulk_spectrum(const ModelSpec& spec, double k) {
  BulkSpectrum out;
  out.k = k;
  if (const auto* s = std::get_if<KitaevSpec>(&spec)) {
    const double a = 2.0 * s->t * std::cos(k) + s->mu;
    const double b = 2.0 * std::abs(s->delta) * std::sin(k);
    const double e = std::sqrt(a * a + b * b);
    out.branches = {-e, e};
    return out;
  }
  if (const auto* s = std::get_if<NanowireSpec>(&spec)) {
    const double eps = 2.0 * s->t - 2.0 * s->t * std::cos(k) - s->mu;
    const double so2 = 4.0 * s->alpha * s->alpha * std::sin(k) * std::sin(k);
    const double d2 = s->delta * s->delta;
    const double v2 = s->V * s->V;
    const double base = eps * eps + so2 + d2 + v2;
    const double root = 2.0 * std::sqrt(d2 * v2 + v2 * eps * eps + so2 * eps * eps);
    const double lo = std::sqrt(std::max(base - root, 0.0));
    const double hi = std::sqrt(base + root);
    out.branches = {-hi, -lo, lo, hi};
    return out;
  }
  throw invalid_argument("bulk_spectrum: no analytic dispersion for " + model_name(spec));
}

double phase_boundary(const ModelSpec& spec) {
  return std::visit(overloaded{
                        [](const KitaevSpec& s) { return 2.0 * std::abs(s.t); },
                        [](const NanowireSpec& s) { return std::hypot(s.delta, s.mu); },
                        [](const ParafermionSpec& s) { return s.h; },
                        [](const DoubleKitaevSpec&) -> double {
                          throw Error(ErrorKind::Unsupported,
                                      "phase_boundary: no closed form for the double Kitaev chain");
                        },
                    },
                    spec);
}

std::string phase_boundary_parameter(const ModelSpec& spec) {
  if (std::holds_alternative<KitaevSpec>(spec)) return "mu";
  if (std::holds_alternative<NanowireSpec>(spec)) return "V";
  if (std::holds_alternative<ParafermionSpec>(spec)) return "g";
  throw Error(ErrorKind::Unsupported, "phase_boundary: no closed form for the double Kitaev chain");
}

PhaseSide classify_phase(const ModelSpec& spec) {
  const double critical = phase_boundary(spec);
  double x = 0.0;
  bool topological_above = true;
  if (const auto* s = std::get_if<KitaevSpec>(&spec)) {
    x = std::abs(s->mu);
    topological_above = false;
  } else if (const auto* s = std::get_if<NanowireSpec>(&spec)) {
    x = std::abs(s->V);
  } else {
    x = std::get<ParafermionSpec>(spec).g;
  }
  PhaseSide side;
  side.topological = topological_above ? x > critical : x < critical;
  side.relative_distance = critical > 0.0 ? std::abs(x - critical) / critical
                                          : std::numeric_limits<double>::infinity();
  return side;
}

}  // namespace nhprobe
