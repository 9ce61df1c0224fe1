// SPDX-License-Identifier: Apache-2.0
//
// NEON variant for aarch64. One float64x2_t holds a single complex<double>
// as [re, im]; the product with a broadcast scalar (ar + i*ai) is assembled
// from the value and its lane swap with a [-1, +1] sign mask.

#include "qvolt/kernels.hpp"

#include <arm_neon.h>

namespace qvolt::kernels::detail {

namespace {

const float64x2_t kSign = {-1.0, 1.0};

inline float64x2_t cmul_acc(float64x2_t acc, double ar, double ai,
                            float64x2_t v) {
  const float64x2_t sw = vextq_f64(v, v, 1);
  const float64x2_t t = vmulq_n_f64(sw, ai);
  acc = vfmaq_n_f64(acc, v, ar);
  return vfmaq_f64(acc, t, kSign);
}

}  // namespace

void zgemm_neon(const Complex* a, const Complex* b, Complex* c,
                std::size_t m, std::size_t k, std::size_t n) {
  const double* bd = reinterpret_cast<const double*>(b);
  double* cd = reinterpret_cast<double*>(c);
  for (std::size_t i = 0; i < m; ++i) {
    const Complex* arow = a + i * k;
    double* crow = cd + 2 * i * n;
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
      float64x2_t acc0 = vdupq_n_f64(0.0);
      float64x2_t acc1 = vdupq_n_f64(0.0);
      float64x2_t acc2 = vdupq_n_f64(0.0);
      float64x2_t acc3 = vdupq_n_f64(0.0);
      for (std::size_t l = 0; l < k; ++l) {
        const double ar = arow[l].real();
        const double ai = arow[l].imag();
        const double* bp = bd + 2 * (l * n + j);
        acc0 = cmul_acc(acc0, ar, ai, vld1q_f64(bp));
        acc1 = cmul_acc(acc1, ar, ai, vld1q_f64(bp + 2));
        acc2 = cmul_acc(acc2, ar, ai, vld1q_f64(bp + 4));
        acc3 = cmul_acc(acc3, ar, ai, vld1q_f64(bp + 6));
      }
      vst1q_f64(crow + 2 * j, acc0);
      vst1q_f64(crow + 2 * j + 2, acc1);
      vst1q_f64(crow + 2 * j + 4, acc2);
      vst1q_f64(crow + 2 * j + 6, acc3);
    }
    for (; j < n; ++j) {
      float64x2_t acc = vdupq_n_f64(0.0);
      for (std::size_t l = 0; l < k; ++l) {
        acc = cmul_acc(acc, arow[l].real(), arow[l].imag(),
                       vld1q_f64(bd + 2 * (l * n + j)));
      }
      vst1q_f64(crow + 2 * j, acc);
    }
  }
}

void zaxpy_neon(Complex alpha, const Complex* x, Complex* y, std::size_t n) {
  const double ar = alpha.real();
  const double ai = alpha.imag();
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  for (std::size_t j = 0; j < n; ++j) {
    vst1q_f64(yd + 2 * j,
              cmul_acc(vld1q_f64(yd + 2 * j), ar, ai, vld1q_f64(xd + 2 * j)));
  }
}

}  // namespace qvolt::kernels::detail
