#pragma once

// Data-parallel complex kernels behind the dense linear algebra layer.
//
// Every kernel has a portable scalar reference implementation. Vector
// variants (AVX2+FMA on x86-64, NEON on aarch64) are compiled into separate
// translation units and chosen once at startup from the CPU feature flags.
// The variant can be forced with NHPROBE_KERNELS=scalar|avx2|neon.
//
// All matrices are column-major with an explicit leading dimension, matching
// Eigen's default storage.

#include <complex>
#include <cstddef>
#include <string_view>
#include <vector>

namespace nhprobe::linalg::kernels {

using cplx = std::complex<double>;

struct KernelTable {
  const char* name;
  /// C(m×n) = A(m×k)·B(k×n), or C += A·B when accumulate is set.
  void (*zgemm)(std::size_t m, std::size_t n, std::size_t k, const cplx* a,
                std::size_t lda, const cplx* b, std::size_t ldb, cplx* c,
                std::size_t ldc, bool accumulate);
  /// y += alpha·x
  void (*zaxpy)(std::size_t n, cplx alpha, const cplx* x, cplx* y);
  /// Σ |x_i|²
  double (*znorm_sq)(std::size_t n, const cplx* x);
  /// Row scaling of an m×n block: X(i, j) *= s_i.
  void (*scale_rows)(std::size_t m, std::size_t n, const double* s, cplx* x,
                     std::size_t ldx);
};

const KernelTable& scalar_table();

/// nullptr when the variant is not compiled in or the CPU lacks the feature.
const KernelTable* avx2_table();
const KernelTable* neon_table();

/// Every table usable on this machine, scalar first.
std::vector<const KernelTable*> available_tables();

/// The table selected for this process.
const KernelTable& active();

/// Override the process-wide selection (tests and benchmarks). Returns false
/// if the named variant is unavailable.
bool select(std::string_view name);

}  // namespace nhprobe::linalg::kernels
