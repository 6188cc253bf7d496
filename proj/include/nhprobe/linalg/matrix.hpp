#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string_view>

namespace nhprobe {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Largest dense dimension accepted anywhere in the library.
inline constexpr Eigen::Index kMaxDim = 4096;

}  // namespace nhprobe

namespace nhprobe::linalg {

/// Throws InvalidArgument unless `a` is square, non-empty, within kMaxDim and
/// finite. `what` names the operand in the message.
void require_square_finite(const ComplexMatrix& a, std::string_view what);

bool is_finite(const ComplexMatrix& a);

double frobenius(const ComplexMatrix& a);

/// ‖A − A†‖_F / max(‖A‖_F, tiny)
double hermiticity_defect(const ComplexMatrix& a);

/// (A + A†)/2
ComplexMatrix hermitize(const ComplexMatrix& a);

/// Dense product through the dispatched GEMM kernel. Shapes must agree.
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
void matmul_into(const ComplexMatrix& a, const ComplexMatrix& b, ComplexMatrix& out);

/// A·B − B·A
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
/// A·B + B·A
ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// Relative Frobenius distance ‖A − B‖_F / max(‖B‖_F, tiny).
double relative_distance(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace nhprobe::linalg
