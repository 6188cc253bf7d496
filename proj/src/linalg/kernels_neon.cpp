// NEON (aarch64) variants. One complex<double> per float64x2_t register.

#include <arm_neon.h>

#include "nhprobe/linalg/kernels.hpp"

namespace nhprobe::linalg::kernels {
namespace {

// acc += x * (br + i·bi) for one complex lane.
inline float64x2_t cmla(float64x2_t acc, float64x2_t x, float64x2_t br,
                        float64x2_t bi_signed) {
  const float64x2_t xs = vextq_f64(x, x, 1);  // (im, re)
  acc = vfmaq_f64(acc, x, br);
  return vfmaq_f64(acc, xs, bi_signed);
}

void zgemm_neon(std::size_t m, std::size_t n, std::size_t k, const cplx* a,
                std::size_t lda, const cplx* b, std::size_t ldb, cplx* c,
                std::size_t ldc, bool accumulate) {
  for (std::size_t j = 0; j < n; ++j) {
    double* cj = reinterpret_cast<double*>(c + j * ldc);
    if (!accumulate) {
      for (std::size_t i = 0; i < 2 * m; ++i) cj[i] = 0.0;
    }
    for (std::size_t p = 0; p < k; ++p) {
      const cplx bpj = b[p + j * ldb];
      const float64x2_t br = vdupq_n_f64(bpj.real());
      const double bis[2] = {-bpj.imag(), bpj.imag()};
      const float64x2_t bi = vld1q_f64(bis);
      const double* ap = reinterpret_cast<const double*>(a + p * lda);
      for (std::size_t i = 0; i < m; ++i) {
        float64x2_t acc = vld1q_f64(cj + 2 * i);
        acc = cmla(acc, vld1q_f64(ap + 2 * i), br, bi);
        vst1q_f64(cj + 2 * i, acc);
      }
    }
  }
}

void zaxpy_neon(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
  const float64x2_t ar = vdupq_n_f64(alpha.real());
  const double ais[2] = {-alpha.imag(), alpha.imag()};
  const float64x2_t ai = vld1q_f64(ais);
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  for (std::size_t i = 0; i < n; ++i) {
    vst1q_f64(yd + 2 * i, cmla(vld1q_f64(yd + 2 * i), vld1q_f64(xd + 2 * i), ar, ai));
  }
}

double znorm_sq_neon(std::size_t n, const cplx* x) {
  const double* xd = reinterpret_cast<const double*>(x);
  float64x2_t acc = vdupq_n_f64(0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t v = vld1q_f64(xd + 2 * i);
    acc = vfmaq_f64(acc, v, v);
  }
  return vaddvq_f64(acc);
}

void scale_rows_neon(std::size_t m, std::size_t n, const double* s, cplx* x,
                     std::size_t ldx) {
  for (std::size_t j = 0; j < n; ++j) {
    double* xd = reinterpret_cast<double*>(x + j * ldx);
    for (std::size_t i = 0; i < m; ++i) {
      vst1q_f64(xd + 2 * i, vmulq_n_f64(vld1q_f64(xd + 2 * i), s[i]));
    }
  }
}

}  // namespace

const KernelTable& neon_table_impl() {
  static const KernelTable table{"neon", zgemm_neon, zaxpy_neon, znorm_sq_neon,
                                 scale_rows_neon};
  return table;
}

}  // namespace nhprobe::linalg::kernels
