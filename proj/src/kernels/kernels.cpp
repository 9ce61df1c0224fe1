// SPDX-License-Identifier: Apache-2.0
#include "qvolt/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace qvolt::kernels {

namespace detail {

void zgemm_scalar(const Complex* a, const Complex* b, Complex* c,
                  std::size_t m, std::size_t k, std::size_t n) {
  for (std::size_t i = 0; i < m; ++i) {
    Complex* crow = c + i * n;
    for (std::size_t j = 0; j < n; ++j) crow[j] = Complex(0.0, 0.0);
    const Complex* arow = a + i * k;
    for (std::size_t l = 0; l < k; ++l) {
      const Complex ail = arow[l];
      if (ail == Complex(0.0, 0.0)) continue;
      const Complex* brow = b + l * n;
      for (std::size_t j = 0; j < n; ++j) crow[j] += ail * brow[j];
    }
  }
}

void zaxpy_scalar(Complex alpha, const Complex* x, Complex* y, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) y[j] += alpha * x[j];
}

}  // namespace detail

namespace {

bool cpu_has_avx2() {
#if defined(QVOLT_KERNELS_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend pick_default_backend() {
  if (const char* env = std::getenv("QVOLT_KERNEL")) {
    if (std::strcmp(env, "scalar") == 0) return Backend::Scalar;
#if defined(QVOLT_KERNELS_AVX2)
    if (std::strcmp(env, "avx2") == 0 && cpu_has_avx2()) return Backend::Avx2;
#endif
#if defined(QVOLT_KERNELS_NEON)
    if (std::strcmp(env, "neon") == 0) return Backend::Neon;
#endif
  }
#if defined(QVOLT_KERNELS_AVX2)
  if (cpu_has_avx2()) return Backend::Avx2;
#endif
#if defined(QVOLT_KERNELS_NEON)
  return Backend::Neon;
#else
  return Backend::Scalar;
#endif
}

Backend g_backend = pick_default_backend();

}  // namespace

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
    case Backend::Neon: return "neon";
  }
  return "unknown";
}

Backend active_backend() { return g_backend; }

bool backend_available(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return true;
    case Backend::Avx2:
      return cpu_has_avx2();
    case Backend::Neon:
#if defined(QVOLT_KERNELS_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

bool set_backend(Backend b) {
  if (!backend_available(b)) return false;
  g_backend = b;
  return true;
}

void zgemm(const Complex* a, const Complex* b, Complex* c,
           std::size_t m, std::size_t k, std::size_t n) {
  switch (g_backend) {
#if defined(QVOLT_KERNELS_AVX2)
    case Backend::Avx2:
      detail::zgemm_avx2(a, b, c, m, k, n);
      return;
#endif
#if defined(QVOLT_KERNELS_NEON)
    case Backend::Neon:
      detail::zgemm_neon(a, b, c, m, k, n);
      return;
#endif
    default:
      detail::zgemm_scalar(a, b, c, m, k, n);
      return;
  }
}

void zaxpy(Complex alpha, const Complex* x, Complex* y, std::size_t n) {
  switch (g_backend) {
#if defined(QVOLT_KERNELS_AVX2)
    case Backend::Avx2:
      detail::zaxpy_avx2(alpha, x, y, n);
      return;
#endif
#if defined(QVOLT_KERNELS_NEON)
    case Backend::Neon:
      detail::zaxpy_neon(alpha, x, y, n);
      return;
#endif
    default:
      detail::zaxpy_scalar(alpha, x, y, n);
      return;
  }
}

}  // namespace qvolt::kernels
