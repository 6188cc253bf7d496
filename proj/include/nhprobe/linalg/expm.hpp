#pragma once

#include "nhprobe/linalg/matrix.hpp"

namespace nhprobe::linalg {

/// Matrix exponential e^A by scaling and squaring with a diagonal Padé
/// approximant of order 3, 5, 7, 9 or 13, chosen from the 1-norm of A.
///
/// No eigendecomposition is involved, so defective inputs (Jordan blocks at an
/// exceptional point) are handled to working precision.
ComplexMatrix expm(const ComplexMatrix& a);

}  // namespace nhprobe::linalg
