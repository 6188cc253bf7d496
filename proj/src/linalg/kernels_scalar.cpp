#include "nhprobe/linalg/kernels.hpp"

namespace nhprobe::linalg::kernels {
namespace {

void zgemm_scalar(std::size_t m, std::size_t n, std::size_t k, const cplx* a,
                  std::size_t lda, const cplx* b, std::size_t ldb, cplx* c,
                  std::size_t ldc, bool accumulate) {
  for (std::size_t j = 0; j < n; ++j) {
    cplx* cj = c + j * ldc;
    if (!accumulate) {
      for (std::size_t i = 0; i < m; ++i) cj[i] = 0.0;
    }
    for (std::size_t p = 0; p < k; ++p) {
      const cplx bpj = b[p + j * ldb];
      if (bpj == cplx(0.0)) continue;
      const cplx* ap = a + p * lda;
      for (std::size_t i = 0; i < m; ++i) cj[i] += ap[i] * bpj;
    }
  }
}

void zaxpy_scalar(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

double znorm_sq_scalar(std::size_t n, const cplx* x) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::norm(x[i]);
  return s;
}

void scale_rows_scalar(std::size_t m, std::size_t n, const double* s, cplx* x,
                       std::size_t ldx) {
  for (std::size_t j = 0; j < n; ++j) {
    cplx* xj = x + j * ldx;
    for (std::size_t i = 0; i < m; ++i) xj[i] *= s[i];
  }
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{"scalar", zgemm_scalar, zaxpy_scalar,
                                 znorm_sq_scalar, scale_rows_scalar};
  return table;
}

}  // namespace nhprobe::linalg::kernels
