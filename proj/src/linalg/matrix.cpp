#include "nhprobe/linalg/matrix.hpp"

#include <cmath>
#include <string>

#include "nhprobe/error.hpp"
#include "nhprobe/linalg/kernels.hpp"

namespace nhprobe {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::NotPsd: return "not-psd";
    case ErrorKind::Capacity: return "capacity";
    case ErrorKind::NotTopological: return "not-topological";
    case ErrorKind::SingularParameter: return "singular-parameter";
    case ErrorKind::Underflow: return "underflow";
    case ErrorKind::Unsupported: return "unsupported";
  }
  return "unknown";
}

NotPsdError::NotPsdError(double eigenvalue, double tolerance)
    : Error(ErrorKind::NotPsd,
            "matrix is not positive semidefinite: eigenvalue " +
                std::to_string(eigenvalue) + " below -" + std::to_string(tolerance)),
      eigenvalue_(eigenvalue) {}

}  // namespace nhprobe

namespace nhprobe::linalg {

namespace {
constexpr double kTiny = 1e-300;
}

bool is_finite(const ComplexMatrix& a) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const cplx v = a.data()[i];
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  }
  return true;
}

void require_square_finite(const ComplexMatrix& a, std::string_view what) {
  if (a.rows() == 0 || a.rows() != a.cols()) {
    throw invalid_argument(std::string(what) + ": expected a non-empty square matrix, got " +
                           std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
  if (a.rows() > kMaxDim) {
    throw Error(ErrorKind::Capacity, std::string(what) + ": dimension " +
                                         std::to_string(a.rows()) + " exceeds " +
                                         std::to_string(kMaxDim));
  }
  if (!is_finite(a)) {
    throw invalid_argument(std::string(what) + ": non-finite entry");
  }
}

double frobenius(const ComplexMatrix& a) {
  return std::sqrt(kernels::active().znorm_sq(static_cast<std::size_t>(a.size()), a.data()));
}

double hermiticity_defect(const ComplexMatrix& a) {
  return (a - a.adjoint()).norm() / std::max(a.norm(), kTiny);
}

ComplexMatrix hermitize(const ComplexMatrix& a) {
  ComplexMatrix out = 0.5 * (a + a.adjoint());
  return out;
}

void matmul_into(const ComplexMatrix& a, const ComplexMatrix& b, ComplexMatrix& out) {
  if (a.cols() != b.rows()) {
    throw invalid_argument("matmul: inner dimensions differ (" + std::to_string(a.cols()) +
                           " vs " + std::to_string(b.rows()) + ")");
  }
  out.resize(a.rows(), b.cols());
  kernels::active().zgemm(static_cast<std::size_t>(a.rows()), static_cast<std::size_t>(b.cols()),
                          static_cast<std::size_t>(a.cols()), a.data(),
                          static_cast<std::size_t>(a.rows()), b.data(),
                          static_cast<std::size_t>(b.rows()), out.data(),
                          static_cast<std::size_t>(out.rows()), false);
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out;
  matmul_into(a, b, out);
  return out;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return matmul(a, b) - matmul(b, a);
}

ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return matmul(a, b) + matmul(b, a);
}

double relative_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).norm() / std::max(b.norm(), kTiny);
}

}  // namespace nhprobe::linalg
