// SPDX-License-Identifier: Apache-2.0
//
// AVX2+FMA variant of the complex kernels. One __m256d holds two
// complex<double> values as [re0, im0, re1, im1]. A complex product with a
// broadcast scalar (ar + i*ai) is
//   re' = ar*re - ai*im,  im' = ar*im + ai*re
// which maps onto _mm256_fmaddsub_pd(ar, v, ai * swap(v)).

#include "qvolt/kernels.hpp"

#include <immintrin.h>

namespace qvolt::kernels::detail {

namespace {

inline __m256d cmul_acc(__m256d acc, __m256d ar, __m256d ai, __m256d v) {
  const __m256d sw = _mm256_permute_pd(v, 0x5);
  return _mm256_add_pd(acc, _mm256_fmaddsub_pd(ar, v, _mm256_mul_pd(ai, sw)));
}

}  // namespace

void zgemm_avx2(const Complex* a, const Complex* b, Complex* c,
                std::size_t m, std::size_t k, std::size_t n) {
  const double* bd = reinterpret_cast<const double*>(b);
  double* cd = reinterpret_cast<double*>(c);
  for (std::size_t i = 0; i < m; ++i) {
    const Complex* arow = a + i * k;
    double* crow = cd + 2 * i * n;
    std::size_t j = 0;
    // 8 complexes (4 vectors) per tile, accumulated in registers.
    for (; j + 8 <= n; j += 8) {
      __m256d acc0 = _mm256_setzero_pd();
      __m256d acc1 = _mm256_setzero_pd();
      __m256d acc2 = _mm256_setzero_pd();
      __m256d acc3 = _mm256_setzero_pd();
      for (std::size_t l = 0; l < k; ++l) {
        const __m256d ar = _mm256_set1_pd(arow[l].real());
        const __m256d ai = _mm256_set1_pd(arow[l].imag());
        const double* bp = bd + 2 * (l * n + j);
        acc0 = cmul_acc(acc0, ar, ai, _mm256_loadu_pd(bp));
        acc1 = cmul_acc(acc1, ar, ai, _mm256_loadu_pd(bp + 4));
        acc2 = cmul_acc(acc2, ar, ai, _mm256_loadu_pd(bp + 8));
        acc3 = cmul_acc(acc3, ar, ai, _mm256_loadu_pd(bp + 12));
      }
      _mm256_storeu_pd(crow + 2 * j, acc0);
      _mm256_storeu_pd(crow + 2 * j + 4, acc1);
      _mm256_storeu_pd(crow + 2 * j + 8, acc2);
      _mm256_storeu_pd(crow + 2 * j + 12, acc3);
    }
    for (; j + 2 <= n; j += 2) {
      __m256d acc = _mm256_setzero_pd();
      for (std::size_t l = 0; l < k; ++l) {
        const __m256d ar = _mm256_set1_pd(arow[l].real());
        const __m256d ai = _mm256_set1_pd(arow[l].imag());
        acc = cmul_acc(acc, ar, ai, _mm256_loadu_pd(bd + 2 * (l * n + j)));
      }
      _mm256_storeu_pd(crow + 2 * j, acc);
    }
    for (; j < n; ++j) {
      Complex acc(0.0, 0.0);
      for (std::size_t l = 0; l < k; ++l) acc += arow[l] * b[l * n + j];
      c[i * n + j] = acc;
    }
  }
}

void zaxpy_avx2(Complex alpha, const Complex* x, Complex* y, std::size_t n) {
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const __m256d acc = cmul_acc(_mm256_loadu_pd(yd + 2 * j), ar, ai,
                                 _mm256_loadu_pd(xd + 2 * j));
    _mm256_storeu_pd(yd + 2 * j, acc);
  }
  for (; j < n; ++j) y[j] += alpha * x[j];
}

}  // namespace qvolt::kernels::detail
