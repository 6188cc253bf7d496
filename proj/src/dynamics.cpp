#include "nhprobe/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nhprobe/error.hpp"
#include "nhprobe/linalg/expm.hpp"
#include "nhprobe/linalg/spectral.hpp"

namespace nhprobe {
namespace {

constexpr double kUnderflow = 1e-300;
constexpr double kEvolvedTol = 1e-8;

Error underflow(double trace, double time) {
  return Error(ErrorKind::Underflow,
               "trace of the evolved state fell to " + std::to_string(trace) + " at t = " +
                   std::to_string(time) + "; renormalize more often (smaller sample interval)");
}

long snap(double t, double step) {
  const double n = std::round(t / step);
  if (std::abs(n * step - t) > 1e-9 * std::max(1.0, std::abs(t))) {
    throw invalid_argument("time " + std::to_string(t) + " is not a multiple of step " + std::to_string(step));
  }
  return static_cast<long>(n);
}

ComplexMatrix matrix_power(ComplexMatrix base, int n) {
  ComplexMatrix result = ComplexMatrix::Identity(base.rows(), base.cols());
  ComplexMatrix tmp;
  bool first = true;
  while (n > 0) {
    if (n & 1) {
      if (first) {
        result = base;
        first = false;
      } else {
        linalg::matmul_into(result, base, tmp);
        result.swap(tmp);
      }
    }
    n >>= 1;
    if (n > 0) {
      linalg::matmul_into(base, base, tmp);
      base.swap(tmp);
    }
  }
  return result;
}

}  // namespace

DensityMatrix::DensityMatrix(ComplexMatrix matrix, double tol) : tol_(tol) {
  linalg::require_square_finite(matrix, "DensityMatrix");
  if (!(tol >= 0.0)) throw invalid_argument("DensityMatrix: tolerance must be >= 0");
  const double herm = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol) {
    throw invalid_argument("DensityMatrix: not Hermitian (max |ρ − ρ†| = " + std::to_string(herm) + ")");
  }
  matrix_ = linalg::hermitize(matrix);
  const double tr = matrix_.trace().real();
  if (std::abs(tr - 1.0) > tol) {
    throw invalid_argument("DensityMatrix: trace " + std::to_string(tr) + " differs from 1");
  }
  const double lowest = linalg::herm_eigenvalues(matrix_).minCoeff();
  if (lowest < -tol) throw NotPsdError(lowest, tol);
}

DensityMatrix DensityMatrix::trusted(ComplexMatrix matrix, double tol) {
  DensityMatrix d;
  d.matrix_ = std::move(matrix);
  d.tol_ = tol;
  return d;
}

DensityMatrix thermal_state(const ComplexMatrix& H, double beta) {
  if (!std::isfinite(beta) || beta < 0.0) throw invalid_argument("thermal_state: beta must be finite and >= 0");
  linalg::require_square_finite(H, "thermal_state");
  const Eigen::Index n = H.rows();
  if (beta == 0.0) {
    if (linalg::hermiticity_defect(H) > linalg::kHermitianTol) {
      throw invalid_argument("thermal_state: H is not Hermitian");
    }
    return DensityMatrix::trusted(ComplexMatrix::Identity(n, n) / static_cast<double>(n), kDensityTol);
  }
  const linalg::HermEigDecomposition eig = linalg::herm_eig(H);
  const double e0 = eig.eigenvalues[0];
  RealVector p = (-beta * (eig.eigenvalues.array() - e0)).exp().matrix();
  p /= p.sum();
  const ComplexMatrix scaled = eig.eigenvectors * p.asDiagonal();
  return DensityMatrix::trusted(linalg::hermitize(linalg::matmul(scaled, eig.eigenvectors.adjoint())),
                                kDensityTol);
}

std::vector<EvolvedState> evolve_quench(const ComplexMatrix& H_post, const DensityMatrix& rho0,
                                        const std::vector<double>& times, double step) {
  linalg::require_square_finite(H_post, "evolve_quench");
  if (H_post.rows() != rho0.dim()) throw invalid_argument("evolve_quench: H and ρ₀ differ in shape");
  if (!(step > 0.0) || !std::isfinite(step)) throw invalid_argument("evolve_quench: step must be > 0");

  const Eigen::Index n = H_post.rows();
  const ComplexMatrix u = linalg::expm(cplx(0.0, -step) * H_post);
  ComplexMatrix m = ComplexMatrix::Identity(n, n);
  ComplexMatrix tmp;
  long done = 0;
  double log_scale = 0.0;  // log of the trace factored out of m so far

  std::vector<EvolvedState> out;
  out.reserve(times.size());
  for (double t : times) {
    if (t < 0.0) throw invalid_argument("evolve_quench: negative time");
    const long target = snap(t, step);
    if (target < done) throw invalid_argument("evolve_quench: times must be ascending");
    for (; done < target; ++done) {
      linalg::matmul_into(u, m, tmp);
      m.swap(tmp);
    }
    const ComplexMatrix x = linalg::matmul(linalg::matmul(m, rho0.matrix()), m.adjoint());
    const double tr = x.trace().real();
    if (!(tr >= kUnderflow)) throw underflow(tr, t);
    // Keep m at unit scale so long horizons cannot overflow.
    m /= std::sqrt(tr);
    log_scale += std::log(tr);
    out.push_back({t, std::exp(log_scale), DensityMatrix(linalg::hermitize(x / tr), kEvolvedTol)});
  }
  return out;
}

double loschmidt_echo(const DensityMatrix& rho0, const DensityMatrix& rhot) {
  return linalg::uhlmann_fidelity(rho0.matrix(), rhot.matrix(), std::max(rho0.tol(), rhot.tol()));
}

void TimeGrid::validate() const {
  if (!(step > 0.0) || !std::isfinite(step)) throw invalid_argument("time grid: step must be > 0");
  if (!(sample > 0.0) || !std::isfinite(sample)) throw invalid_argument("time grid: sample must be > 0");
  if (!(horizon >= sample) || !std::isfinite(horizon)) {
    throw invalid_argument("time grid: horizon must be >= sample");
  }
  steps_per_sample();
}

int TimeGrid::steps_per_sample() const {
  const double k = std::round(sample / step);
  if (k < 1.0 || std::abs(k * step - sample) > 1e-9 * sample) {
    throw invalid_argument("time grid: sample must be a positive multiple of step");
  }
  return static_cast<int>(k);
}

std::vector<double> TimeGrid::readouts() const {
  const long count = static_cast<long>(std::floor(horizon / sample + 1e-9));
  std::vector<double> t(static_cast<std::size_t>(count + 1));
  for (long i = 0; i <= count; ++i) t[static_cast<std::size_t>(i)] = static_cast<double>(i) * sample;
  return t;
}

double steady_average(const QuenchResult& result, double t0, double t1) {
  const auto& t = result.times;
  const auto& y = result.le_values;
  if (t.size() < 2 || t.size() != y.size()) throw invalid_argument("steady_average: empty time series");
  if (!(t0 < t1)) throw invalid_argument("steady_average: need t0 < t1");
  if (t0 < t.front() - 1e-12 || t1 > t.back() + 1e-12) {
    throw invalid_argument("steady_average: window [" + std::to_string(t0) + ", " + std::to_string(t1) +
                           "] lies outside the time grid");
  }
  auto value_at = [&](double x) {
    auto it = std::upper_bound(t.begin(), t.end(), x);
    if (it == t.begin()) return y.front();
    if (it == t.end()) return y.back();
    const std::size_t i = static_cast<std::size_t>(it - t.begin());
    const double f = (x - t[i - 1]) / (t[i] - t[i - 1]);
    return y[i - 1] + f * (y[i] - y[i - 1]);
  };
  double area = 0.0;
  double prev_t = t0;
  double prev_y = value_at(t0);
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] <= t0) continue;
    if (t[i] >= t1) break;
    area += 0.5 * (prev_y + y[i]) * (t[i] - prev_t);
    prev_t = t[i];
    prev_y = y[i];
  }
  area += 0.5 * (prev_y + value_at(t1)) * (t1 - prev_t);
  return area / (t1 - t0);
}

QuenchResult quench_echo(const ComplexMatrix& H, const ComplexMatrix& perturbation,
                         const QuenchOptions& options) {
  options.grid.validate();
  if (!std::isfinite(options.beta) || options.beta < 0.0) throw invalid_argument("quench: beta must be >= 0");
  if (!(options.t0 < options.t1) || options.t0 < 0.0 || options.t1 > options.grid.horizon + 1e-9) {
    throw invalid_argument("quench: window must satisfy 0 <= t0 < t1 <= horizon");
  }
  if (!(options.dropped_mass >= 0.0 && options.dropped_mass < 1.0)) {
    throw invalid_argument("quench: dropped_mass must lie in [0, 1)");
  }
  linalg::require_square_finite(perturbation, "quench perturbation");
  if (perturbation.rows() != H.rows()) throw invalid_argument("quench: H and perturbation differ in shape");

  const linalg::HermEigDecomposition eig = linalg::herm_eig(H);
  const Eigen::Index n = H.rows();

  RealVector p = (-options.beta * (eig.eigenvalues.array() - eig.eigenvalues[0])).exp().matrix();
  p /= p.sum();
  Eigen::Index r = n;
  double tail = 0.0;
  while (r > 1 && (p[r - 1] == 0.0 || tail + p[r - 1] <= options.dropped_mass)) {
    tail += p[r - 1];
    --r;
  }
  p.head(r) /= p.head(r).sum();
  const RealVector sqrt_p = p.head(r).cwiseSqrt();

  const ComplexMatrix v = eig.eigenvectors;
  ComplexMatrix h_tilde = linalg::matmul(linalg::matmul(v.adjoint(), perturbation), v);
  h_tilde.diagonal() += eig.eigenvalues.cast<cplx>();
  const ComplexMatrix u_step = linalg::expm(cplx(0.0, -options.grid.step) * h_tilde);
  const ComplexMatrix u_sample = matrix_power(u_step, options.grid.steps_per_sample());

  ComplexMatrix x = ComplexMatrix::Zero(n, r);
  for (Eigen::Index i = 0; i < r; ++i) x(i, i) = sqrt_p[i];
  ComplexMatrix tmp;

  QuenchResult result;
  result.times = options.grid.readouts();
  result.le_values.reserve(result.times.size());
  result.norm_traces.reserve(result.times.size());
  result.beta = options.beta;
  result.grid = options.grid;
  result.t0 = options.t0;
  result.t1 = options.t1;

  double log_trace = 0.0;
  for (std::size_t k = 0; k < result.times.size(); ++k) {
    if (k > 0) {
      linalg::matmul_into(u_sample, x, tmp);
      x.swap(tmp);
    }
    const double tr = x.squaredNorm();
    if (!(tr >= kUnderflow)) throw underflow(tr, result.times[k]);
    x /= std::sqrt(tr);
    log_trace += std::log(tr);
    const ComplexMatrix y = sqrt_p.asDiagonal() * x.topRows(r);
    const ComplexMatrix gram = linalg::hermitize(linalg::matmul(y.adjoint(), y));
    const RealVector w = linalg::herm_eigenvalues(gram);
    double s = 0.0;
    for (Eigen::Index i = 0; i < w.size(); ++i) s += std::sqrt(std::max(w[i], 0.0));
    result.le_values.push_back(std::clamp(s * s, 0.0, 1.0));
    result.norm_traces.push_back(std::exp(log_trace));
  }
  result.steady_average = steady_average(result, options.t0, options.t1);
  return result;
}

}  // namespace nhprobe
