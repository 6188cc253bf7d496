#include "nhprobe/linalg/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "nhprobe/error.hpp"

namespace nhprobe::linalg {
namespace {

void require_hermitian(const ComplexMatrix& a, std::string_view what) {
  require_square_finite(a, what);
  const double defect = hermiticity_defect(a);
  if (defect > kHermitianTol) {
    throw invalid_argument(std::string(what) + ": matrix is not Hermitian (relative defect " +
                           std::to_string(defect) + ")");
  }
}

}  // namespace

HermEigDecomposition herm_eig(const ComplexMatrix& a) {
  require_hermitian(a, "herm_eig");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitize(a));
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::InvalidArgument, "herm_eig: eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

RealVector herm_eigenvalues(const ComplexMatrix& a) {
  require_hermitian(a, "herm_eigenvalues");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitize(a), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::InvalidArgument, "herm_eigenvalues: eigensolver did not converge");
  }
  return solver.eigenvalues();
}

double roundoff_floor(const RealVector& eigenvalues) {
  if (eigenvalues.size() == 0) return 0.0;
  return static_cast<double>(eigenvalues.size()) * std::numeric_limits<double>::epsilon() *
         eigenvalues.cwiseAbs().maxCoeff();
}

HermEigDecomposition psd_sqrt_decomposed(const ComplexMatrix& a, double clamp_tol) {
  HermEigDecomposition eig = herm_eig(a);
  const double lowest = eig.eigenvalues.size() > 0 ? eig.eigenvalues.minCoeff() : 0.0;
  if (lowest < -clamp_tol) throw NotPsdError(lowest, clamp_tol);
  const double floor = roundoff_floor(eig.eigenvalues);
  for (double& w : eig.eigenvalues) w = w > floor ? std::sqrt(w) : 0.0;
  return eig;
}

ComplexMatrix psd_sqrt(const ComplexMatrix& a, double clamp_tol) {
  const HermEigDecomposition eig = psd_sqrt_decomposed(a, clamp_tol);
  ComplexMatrix scaled = eig.eigenvectors * eig.eigenvalues.asDiagonal();
  return hermitize(matmul(scaled, eig.eigenvectors.adjoint()));
}

double trace_sqrt(const ComplexMatrix& a, double clamp_tol) {
  const RealVector w = herm_eigenvalues(a);
  const double lowest = w.minCoeff();
  if (lowest < -clamp_tol) throw NotPsdError(lowest, clamp_tol);
  double s = 0.0;
  for (Eigen::Index i = 0; i < w.size(); ++i) s += std::sqrt(std::max(w[i], 0.0));
  return s;
}

double uhlmann_fidelity(const ComplexMatrix& rho0, const ComplexMatrix& rhot,
                        double clamp_tol) {
  if (rho0.rows() != rhot.rows() || rho0.cols() != rhot.cols()) {
    throw invalid_argument("uhlmann_fidelity: operands differ in shape");
  }
  const ComplexMatrix s0 = psd_sqrt(rho0, clamp_tol);
  const ComplexMatrix sandwich = hermitize(matmul(matmul(s0, rhot), s0));
  const double root_trace = trace_sqrt(sandwich, clamp_tol);
  return std::clamp(root_trace * root_trace, 0.0, 1.0);
}

}  // namespace nhprobe::linalg
