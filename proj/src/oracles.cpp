#include "nhprobe/oracles.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "nhprobe/error.hpp"

namespace nhprobe {

ComplexVector jordan_oracle_state(const ComplexVector& a, double lambda, double E, double t) {
  const Eigen::Index n = a.size();
  if (n < 1) throw invalid_argument("jordan_oracle_state: empty amplitude vector");
  const cplx x(0.0, -lambda * t);
  ComplexVector series(n);  // (−iλt)ⁿ/n!
  series[0] = 1.0;
  for (Eigen::Index k = 1; k < n; ++k) series[k] = series[k - 1] * x / static_cast<double>(k);
  ComplexVector out = ComplexVector::Zero(n);
  for (Eigen::Index m = 0; m < n; ++m) {
    for (Eigen::Index k = 0; k <= m; ++k) out[m] += series[k] * a[m - k];
  }
  return std::polar(1.0, -E * t) * out;
}

ComplexMatrix two_level_oracle_rho(double lambda, double lambda_prime, double t) {
  if (!(lambda > 0.0) || !(lambda_prime >= 0.0)) {
    throw invalid_argument("two_level_oracle_rho: need lambda > 0 and lambda_prime >= 0");
  }
  const cplx i(0.0, 1.0);
  ComplexMatrix rho(2, 2);
  if (lambda_prime == 0.0) {
    const double lt = lambda * t;
    rho << 1.0, i * lt, -i * lt, 1.0 + lt * lt;
    return 0.5 * rho;
  }
  const double w = std::sqrt(lambda * lambda_prime);
  const double c = std::cos(w * t);
  const double s = std::sin(w * t);
  const cplx off = 0.5 * i * (std::sqrt(lambda / lambda_prime) - std::sqrt(lambda_prime / lambda)) *
                   std::sin(2.0 * w * t);
  rho << c * c + (lambda_prime / lambda) * s * s, off, std::conj(off),
      c * c + (lambda / lambda_prime) * s * s;
  return 0.5 * rho;
}

double firstorder_gap_ratio(const RealVector& E, double lambda, double lambda_prime) {
  double gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 1; i < E.size(); ++i) gap = std::min(gap, E[i] - E[i - 1]);
  const double scale = std::max(std::abs(lambda), std::abs(lambda_prime));
  return scale > 0.0 ? gap / scale : std::numeric_limits<double>::infinity();
}

ComplexMatrix trivial_phase_firstorder(const RealVector& E, double lambda, double lambda_prime, double t) {
  const Eigen::Index n = E.size();
  if (n < 1) throw invalid_argument("trivial_phase_firstorder: empty spectrum");
  ComplexMatrix rho = ComplexMatrix::Identity(n, n) / static_cast<double>(n);
  for (Eigen::Index i = 1; i < n; ++i) {
    const double de = E[i] - E[i - 1];
    if (de == 0.0) {
      throw Error(ErrorKind::SingularParameter,
                  "trivial_phase_firstorder: repeated energy at index " + std::to_string(i) +
                      "; degenerate levels need the Jordan oracle");
    }
    if (!(de > 0.0)) throw invalid_argument("trivial_phase_firstorder: energies must be increasing");
    const cplx r = (lambda - lambda_prime) / (static_cast<double>(n) * de) * (std::polar(1.0, -de * t) - 1.0);
    rho(i, i - 1) += r;
    rho(i - 1, i) += std::conj(r);
  }
  return rho;
}

ComplexMatrix jordan_generator(int n) {
  if (n < 1) throw invalid_argument("jordan_generator: n must be >= 1");
  ComplexMatrix j = ComplexMatrix::Zero(n, n);
  for (int i = 1; i < n; ++i) j(i, i - 1) = 1.0;
  return j;
}

}  // namespace nhprobe
