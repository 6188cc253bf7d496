// AVX2 + FMA variants of the complex kernels. This translation unit is built
// with -mavx2 -mfma and must only be entered after the dispatcher has
// confirmed both features at runtime.

#include <immintrin.h>

#include <algorithm>
#include <cstring>
#include <vector>

#include "nhprobe/linalg/kernels.hpp"

namespace nhprobe::linalg::kernels {
namespace {

// Register tile: 4 complex rows (two ymm) by 4 columns.
constexpr std::size_t kMr = 4;
constexpr std::size_t kNr = 4;
constexpr std::size_t kKc = 256;
constexpr std::size_t kMc = 128;
constexpr std::size_t kNc = 1024;

// Packed A stores, per k, the 4 rows as interleaved (re, im) followed by the
// "swapped and signed" copy (-im, re) so the inner loop is loads and FMAs only.
void pack_a(std::size_t mc, std::size_t kc, const cplx* a, std::size_t lda,
            double* dst) {
  for (std::size_t i0 = 0; i0 < mc; i0 += kMr) {
    const std::size_t rows = std::min(kMr, mc - i0);
    for (std::size_t p = 0; p < kc; ++p) {
      const cplx* col = a + p * lda + i0;
      double* d = dst + p * 16;
      for (std::size_t r = 0; r < kMr; ++r) {
        const cplx v = r < rows ? col[r] : cplx(0.0);
        d[2 * r] = v.real();
        d[2 * r + 1] = v.imag();
        d[8 + 2 * r] = -v.imag();
        d[8 + 2 * r + 1] = v.real();
      }
    }
    dst += kc * 16;
  }
}

void pack_b(std::size_t kc, std::size_t nc, const cplx* b, std::size_t ldb,
            double* dst) {
  for (std::size_t j0 = 0; j0 < nc; j0 += kNr) {
    const std::size_t cols = std::min(kNr, nc - j0);
    for (std::size_t p = 0; p < kc; ++p) {
      double* d = dst + p * 8;
      for (std::size_t c = 0; c < kNr; ++c) {
        const cplx v = c < cols ? b[p + (j0 + c) * ldb] : cplx(0.0);
        d[2 * c] = v.real();
        d[2 * c + 1] = v.imag();
      }
    }
    dst += kc * 8;
  }
}

inline void micro_kernel(std::size_t kc, const double* ap, const double* bp,
                         cplx* c, std::size_t ldc, std::size_t rows,
                         std::size_t cols, bool accumulate) {
  __m256d c00 = _mm256_setzero_pd(), c01 = _mm256_setzero_pd();
  __m256d c02 = _mm256_setzero_pd(), c03 = _mm256_setzero_pd();
  __m256d c10 = _mm256_setzero_pd(), c11 = _mm256_setzero_pd();
  __m256d c12 = _mm256_setzero_pd(), c13 = _mm256_setzero_pd();

  for (std::size_t p = 0; p < kc; ++p) {
    const __m256d a0 = _mm256_loadu_pd(ap);
    const __m256d a1 = _mm256_loadu_pd(ap + 4);
    const __m256d s0 = _mm256_loadu_pd(ap + 8);
    const __m256d s1 = _mm256_loadu_pd(ap + 12);

    __m256d br = _mm256_broadcast_sd(bp);
    __m256d bi = _mm256_broadcast_sd(bp + 1);
    c00 = _mm256_fmadd_pd(a0, br, c00);
    c10 = _mm256_fmadd_pd(a1, br, c10);
    c00 = _mm256_fmadd_pd(s0, bi, c00);
    c10 = _mm256_fmadd_pd(s1, bi, c10);

    br = _mm256_broadcast_sd(bp + 2);
    bi = _mm256_broadcast_sd(bp + 3);
    c01 = _mm256_fmadd_pd(a0, br, c01);
    c11 = _mm256_fmadd_pd(a1, br, c11);
    c01 = _mm256_fmadd_pd(s0, bi, c01);
    c11 = _mm256_fmadd_pd(s1, bi, c11);

    br = _mm256_broadcast_sd(bp + 4);
    bi = _mm256_broadcast_sd(bp + 5);
    c02 = _mm256_fmadd_pd(a0, br, c02);
    c12 = _mm256_fmadd_pd(a1, br, c12);
    c02 = _mm256_fmadd_pd(s0, bi, c02);
    c12 = _mm256_fmadd_pd(s1, bi, c12);

    br = _mm256_broadcast_sd(bp + 6);
    bi = _mm256_broadcast_sd(bp + 7);
    c03 = _mm256_fmadd_pd(a0, br, c03);
    c13 = _mm256_fmadd_pd(a1, br, c13);
    c03 = _mm256_fmadd_pd(s0, bi, c03);
    c13 = _mm256_fmadd_pd(s1, bi, c13);

    ap += 16;
    bp += 8;
  }

  alignas(32) double tile[kNr][2 * kMr];
  _mm256_store_pd(tile[0], c00);
  _mm256_store_pd(tile[0] + 4, c10);
  _mm256_store_pd(tile[1], c01);
  _mm256_store_pd(tile[1] + 4, c11);
  _mm256_store_pd(tile[2], c02);
  _mm256_store_pd(tile[2] + 4, c12);
  _mm256_store_pd(tile[3], c03);
  _mm256_store_pd(tile[3] + 4, c13);

  for (std::size_t j = 0; j < cols; ++j) {
    double* out = reinterpret_cast<double*>(c + j * ldc);
    if (rows == kMr) {
      const __m256d t0 = _mm256_load_pd(tile[j]);
      const __m256d t1 = _mm256_load_pd(tile[j] + 4);
      if (accumulate) {
        _mm256_storeu_pd(out, _mm256_add_pd(_mm256_loadu_pd(out), t0));
        _mm256_storeu_pd(out + 4, _mm256_add_pd(_mm256_loadu_pd(out + 4), t1));
      } else {
        _mm256_storeu_pd(out, t0);
        _mm256_storeu_pd(out + 4, t1);
      }
    } else {
      for (std::size_t r = 0; r < 2 * rows; ++r) {
        out[r] = accumulate ? out[r] + tile[j][r] : tile[j][r];
      }
    }
  }
}

void zgemm_avx2(std::size_t m, std::size_t n, std::size_t k, const cplx* a,
                std::size_t lda, const cplx* b, std::size_t ldb, cplx* c,
                std::size_t ldc, bool accumulate) {
  if (m == 0 || n == 0) return;
  if (k == 0) {
    if (!accumulate) {
      for (std::size_t j = 0; j < n; ++j) std::fill_n(c + j * ldc, m, cplx(0.0));
    }
    return;
  }
  thread_local std::vector<double> abuf;
  thread_local std::vector<double> bbuf;
  abuf.resize(((kMc + kMr - 1) / kMr) * kKc * 16);
  bbuf.resize(((kNc + kNr - 1) / kNr) * kKc * 8);

  for (std::size_t jc = 0; jc < n; jc += kNc) {
    const std::size_t nc = std::min(kNc, n - jc);
    for (std::size_t pc = 0; pc < k; pc += kKc) {
      const std::size_t kc = std::min(kKc, k - pc);
      const bool acc = accumulate || pc > 0;
      pack_b(kc, nc, b + pc + jc * ldb, ldb, bbuf.data());
      for (std::size_t ic = 0; ic < m; ic += kMc) {
        const std::size_t mc = std::min(kMc, m - ic);
        pack_a(mc, kc, a + ic + pc * lda, lda, abuf.data());
        for (std::size_t jr = 0; jr < nc; jr += kNr) {
          const double* bp = bbuf.data() + (jr / kNr) * kc * 8;
          const std::size_t cols = std::min(kNr, nc - jr);
          for (std::size_t ir = 0; ir < mc; ir += kMr) {
            const double* ap = abuf.data() + (ir / kMr) * kc * 16;
            const std::size_t rows = std::min(kMr, mc - ir);
            micro_kernel(kc, ap, bp, c + (ic + ir) + (jc + jr) * ldc, ldc,
                         rows, cols, acc);
          }
        }
      }
    }
  }
}

void zaxpy_avx2(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    const __m256d xs = _mm256_permute_pd(xv, 0b0101);
    const __m256d prod = _mm256_fmaddsub_pd(xv, ar, _mm256_mul_pd(xs, ai));
    _mm256_storeu_pd(yd + 2 * i, _mm256_add_pd(_mm256_loadu_pd(yd + 2 * i), prod));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

double znorm_sq_avx2(std::size_t n, const cplx* x) {
  const double* xd = reinterpret_cast<const double*>(x);
  const std::size_t len = 2 * n;
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= len; i += 8) {
    const __m256d v0 = _mm256_loadu_pd(xd + i);
    const __m256d v1 = _mm256_loadu_pd(xd + i + 4);
    acc0 = _mm256_fmadd_pd(v0, v0, acc0);
    acc1 = _mm256_fmadd_pd(v1, v1, acc1);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, _mm256_add_pd(acc0, acc1));
  double s = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < len; ++i) s += xd[i] * xd[i];
  return s;
}

void scale_rows_avx2(std::size_t m, std::size_t n, const double* s, cplx* x,
                     std::size_t ldx) {
  for (std::size_t j = 0; j < n; ++j) {
    double* xd = reinterpret_cast<double*>(x + j * ldx);
    std::size_t i = 0;
    for (; i + 2 <= m; i += 2) {
      const __m256d sv = _mm256_set_pd(s[i + 1], s[i + 1], s[i], s[i]);
      _mm256_storeu_pd(xd + 2 * i, _mm256_mul_pd(_mm256_loadu_pd(xd + 2 * i), sv));
    }
    for (; i < m; ++i) x[i + j * ldx] *= s[i];
  }
}

}  // namespace

const KernelTable& avx2_table_impl() {
  static const KernelTable table{"avx2", zgemm_avx2, zaxpy_avx2, znorm_sq_avx2,
                                 scale_rows_avx2};
  return table;
}

}  // namespace nhprobe::linalg::kernels
