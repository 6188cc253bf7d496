#include "nhprobe/bdg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "nhprobe/error.hpp"
#include "nhprobe/linalg/spectral.hpp"

namespace nhprobe {
namespace {

constexpr double kGapRatio = 10.0;

double block_weight(const ComplexVector& w, int mps, int first_site, int count) {
  return w.segment(static_cast<Eigen::Index>(first_site) * mps,
                   static_cast<Eigen::Index>(count) * mps)
      .squaredNorm();
}

EdgeWeights edge_weights(const ComplexVector& w, int sites, int mps, int edge) {
  const double total = std::max(w.squaredNorm(), 1e-300);
  return {block_weight(w, mps, 0, edge) / total, block_weight(w, mps, sites - edge, edge) / total};
}

// Flip the sign of w so its largest entry has positive real part (or, with
// imaginary = true, positive imaginary part).
void fix_sign(ComplexVector& w, bool imaginary) {
  Eigen::Index lead = 0;
  w.cwiseAbs().maxCoeff(&lead);
  const double v = imaginary ? w[lead].imag() : w[lead].real();
  if (v < 0.0) w = -w;
}

}  // namespace

QuadraticForm quadratic_form(const ModelSpec& spec) {
  validate(spec);
  QuadraticForm q;
  if (const auto* s = std::get_if<KitaevSpec>(&spec)) {
    const int n = s->sites;
    q.hopping = ComplexMatrix::Zero(n, n);
    q.pairing = ComplexMatrix::Zero(n, n);
    for (int j = 0; j < n; ++j) {
      q.hopping(j, j) = -s->mu;
      if (j + 1 < n) {
        q.hopping(j, j + 1) = -s->t;
        q.hopping(j + 1, j) = -s->t;
        q.pairing(j, j + 1) = s->delta;
      }
    }
    q.constant = 0.5 * s->mu * n;
    return q;
  }
  if (const auto* s = std::get_if<NanowireSpec>(&spec)) {
    const int n = 2 * s->sites;
    const cplx i(0.0, 1.0);
    q.hopping = ComplexMatrix::Zero(n, n);
    q.pairing = ComplexMatrix::Zero(n, n);
    for (int site = 0; site < s->sites; ++site) {
      const int up = 2 * site;
      const int dn = up + 1;
      for (int spin = 0; spin < 2; ++spin) {
        const int m = up + spin;
        const double sigma = spin == 0 ? 1.0 : -1.0;
        q.hopping(m, m) = 2.0 * s->t - s->mu;
        if (site + 1 < s->sites) {
          const cplx amp = -0.5 * (2.0 * s->t - 2.0 * i * s->alpha * sigma);
          q.hopping(m + 2, m) = amp;
          q.hopping(m, m + 2) = std::conj(amp);
        }
      }
      q.hopping(up, dn) = s->V;
      q.hopping(dn, up) = s->V;
      q.pairing(up, dn) = s->delta;
    }
    return q;
  }
  throw invalid_argument("quadratic_form: no quadratic form for " + model_name(spec));
}

BdgMatrix build_bdg(const ModelSpec& spec) {
  const QuadraticForm q = quadratic_form(spec);
  const Eigen::Index d = q.hopping.rows();
  const ComplexMatrix a = q.pairing - q.pairing.transpose();
  BdgMatrix out;
  if (const auto* s = std::get_if<KitaevSpec>(&spec)) {
    out.sites = s->sites;
    out.modes_per_site = 1;
  } else {
    out.sites = std::get<NanowireSpec>(spec).sites;
    out.modes_per_site = 2;
  }
  out.matrix = ComplexMatrix::Zero(2 * d, 2 * d);
  out.matrix.topLeftCorner(d, d) = 0.5 * q.hopping;
  out.matrix.topRightCorner(d, d) = 0.5 * a.adjoint();
  out.matrix.bottomLeftCorner(d, d) = 0.5 * a;
  out.matrix.bottomRightCorner(d, d) = -0.5 * q.hopping.transpose();
  return out;
}

ComplexVector particle_hole_conjugate(const ComplexVector& psi) {
  const Eigen::Index d = psi.size() / 2;
  ComplexVector out(psi.size());
  out.head(d) = psi.tail(d).conjugate();
  out.tail(d) = psi.head(d).conjugate();
  return out;
}

RealVector folded_spectrum(const BdgMatrix& bdg) {
  const int d = bdg.modes();
  if (d > 12) throw Error(ErrorKind::Capacity, "folded_spectrum: at most 12 modes");
  RealVector eps = linalg::herm_eigenvalues(bdg.matrix);
  // Upper half of the ± paired spectrum; many-body quasiparticle energy is 2ε.
  RealVector e = 2.0 * eps.tail(d);
  const Eigen::Index n = Eigen::Index{1} << d;
  RealVector out(n);
  for (Eigen::Index s = 0; s < n; ++s) {
    double sum = 0.0;
    for (int k = 0; k < d; ++k) {
      if (s & (Eigen::Index{1} << k)) sum += e[k];
    }
    out[s] = sum;
  }
  std::sort(out.data(), out.data() + n);
  return out;
}

ZeroModePair extract_zero_modes(const BdgMatrix& bdg, double edge_fraction) {
  if (!(edge_fraction > 0.0 && edge_fraction <= 0.5)) {
    throw invalid_argument("extract_zero_modes: edge_fraction must lie in (0, 0.5]");
  }
  const int d = bdg.modes();
  const int mps = bdg.modes_per_site;
  const linalg::HermEigDecomposition eig = linalg::herm_eig(bdg.matrix);

  std::vector<Eigen::Index> order(static_cast<std::size_t>(2 * d));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return std::abs(eig.eigenvalues[a]) < std::abs(eig.eigenvalues[b]);
  });
  ZeroModePair zm;
  zm.energies[0] = eig.eigenvalues[order[0]];
  zm.energies[1] = eig.eigenvalues[order[1]];
  zm.bulk_gap = order.size() > 2 ? std::abs(eig.eigenvalues[order[2]]) : 0.0;
  const double pair = std::max(std::abs(zm.energies[0]), std::abs(zm.energies[1]));
  if (!(zm.bulk_gap > 0.0) || pair * kGapRatio > zm.bulk_gap) {
    throw Error(ErrorKind::NotTopological,
                "extract_zero_modes: no isolated zero-energy pair (closest |E| = " +
                    std::to_string(pair) + ", next = " + std::to_string(zm.bulk_gap) + ")");
  }

  // Self-conjugate (Majorana) vectors of the pair subspace, orthonormalized.
  // For such vectors ⟨x, y⟩ is real, so Gram–Schmidt stays in that subspace.
  const cplx i(0.0, 1.0);
  std::vector<ComplexVector> candidates;
  for (int k = 0; k < 2; ++k) {
    const ComplexVector psi = eig.eigenvectors.col(order[static_cast<std::size_t>(k)]);
    candidates.push_back(psi + particle_hole_conjugate(psi));
    candidates.push_back(i * psi + particle_hole_conjugate(i * psi));
  }
  std::vector<ComplexVector> basis;
  for (int pass = 0; pass < 2 && basis.size() < 2; ++pass) {
    ComplexVector best;
    double best_norm = 0.0;
    for (const ComplexVector& c : candidates) {
      ComplexVector r = c;
      for (const ComplexVector& b : basis) r -= b.dot(r).real() * b;
      if (r.norm() > best_norm) {
        best_norm = r.norm();
        best = r;
      }
    }
    if (best_norm < 1e-8) break;
    basis.push_back(best / best_norm);
  }
  if (basis.size() < 2) {
    throw Error(ErrorKind::NotTopological, "extract_zero_modes: pair subspace is not particle-hole closed");
  }

  zm.sites = bdg.sites;
  zm.modes_per_site = mps;
  zm.edge_sites = std::max(1, static_cast<int>(std::ceil(edge_fraction * bdg.sites - 1e-9)));

  // Left-edge weight as a quadratic form on the real 2-plane; its top
  // eigenvector is γ, the orthogonal direction γ′.
  Eigen::Matrix2d g;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const auto pa = basis[a].head(d).segment(0, static_cast<Eigen::Index>(zm.edge_sites) * mps);
      const auto pb = basis[b].head(d).segment(0, static_cast<Eigen::Index>(zm.edge_sites) * mps);
      g(a, b) = pa.dot(pb).real();
    }
  }
  g = 0.5 * (g + g.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> rot(g);
  const Eigen::Vector2d top = rot.eigenvectors().col(1);
  const Eigen::Vector2d low = rot.eigenvectors().col(0);

  auto particle = [&](const Eigen::Vector2d& c) {
    ComplexVector w = (c[0] * basis[0] + c[1] * basis[1]).head(d);
    return ComplexVector(w / w.norm());
  };
  zm.gamma = particle(top);
  zm.gamma_prime = particle(low);
  fix_sign(zm.gamma, false);
  fix_sign(zm.gamma_prime, true);
  zm.gamma_weights = edge_weights(zm.gamma, bdg.sites, mps, zm.edge_sites);
  zm.gamma_prime_weights = edge_weights(zm.gamma_prime, bdg.sites, mps, zm.edge_sites);

  if (mps == 2) {
    const cplx up = zm.gamma[0];
    const cplx dn = zm.gamma[1];
    const cplx z = i * std::conj(up) + dn;
    double phi = -std::arg(z);
    phi = std::remainder(phi, std::numbers::pi);
    if (phi <= -std::numbers::pi / 2) phi += std::numbers::pi;
    const double amplitude = 0.5 * (std::polar(1.0, phi) * z).real();
    const cplx fit_up = amplitude * i * std::polar(1.0, phi);
    const cplx fit_dn = amplitude * std::polar(1.0, -phi);
    const double norm = std::sqrt(std::norm(up) + std::norm(dn));
    zm.phi = phi;
    zm.phi_amplitude = amplitude;
    zm.phi_residual =
        norm > 0.0 ? std::sqrt(std::norm(up - fit_up) + std::norm(dn - fit_dn)) / norm : 0.0;
  }
  return zm;
}

ComplexVector edge_truncated(const ComplexVector& w, int modes_per_site, int keep, bool left) {
  const Eigen::Index sites = w.size() / modes_per_site;
  if (keep < 1 || keep > sites) throw invalid_argument("edge_truncated: keep out of range");
  ComplexVector out = ComplexVector::Zero(w.size());
  const Eigen::Index len = static_cast<Eigen::Index>(keep) * modes_per_site;
  const Eigen::Index start = left ? 0 : w.size() - len;
  out.segment(start, len) = w.segment(start, len);
  const double n = out.norm();
  if (n == 0.0) throw Error(ErrorKind::NotTopological, "edge_truncated: no weight on the requested edge");
  return out / n;
}

ComplexVector site_block(const ComplexVector& w, int modes_per_site, int site) {
  return w.segment(static_cast<Eigen::Index>(site) * modes_per_site, modes_per_site);
}

double KitaevLocalization::max_abs() const {
  return std::max(std::abs(x_plus), std::abs(x_minus));
}

KitaevLocalization kitaev_x_pm(const ModelSpec& spec) {
  const auto* s = std::get_if<KitaevSpec>(&spec);
  if (!s) throw invalid_argument("kitaev_x_pm: requires a Kitaev spec");
  const double denom = 2.0 * (s->t + s->delta);
  if (denom == 0.0) throw Error(ErrorKind::SingularParameter, "kitaev_x_pm: t + delta = 0");
  const cplx root = std::sqrt(cplx(s->mu * s->mu - 4.0 * s->t * s->t + 4.0 * s->delta * s->delta, 0.0));
  return {(-s->mu + root) / denom, (-s->mu - root) / denom};
}

}  // namespace nhprobe
