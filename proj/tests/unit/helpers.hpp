#pragma once

#include <random>

#include "nhprobe/linalg/matrix.hpp"

namespace testing {

inline nhprobe::ComplexMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  nhprobe::ComplexMatrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = {n(rng), n(rng)};
  return m;
}

inline nhprobe::ComplexMatrix random_hermitian(Eigen::Index n, unsigned seed) {
  const nhprobe::ComplexMatrix a = random_matrix(n, n, seed);
  return (a + a.adjoint()) / 2.0;
}

inline double max_entry(const nhprobe::ComplexMatrix& a) { return a.size() ? a.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace testing
