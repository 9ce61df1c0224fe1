// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>

// Low-level dense kernels for complex<double> arrays (row-major, contiguous).
// A scalar reference implementation is always available; on x86-64 an
// AVX2+FMA variant and on aarch64 a NEON variant are compiled in and selected
// at runtime. All variants must agree within floating-point reassociation
// error; tests/test_kernels.cpp checks the equivalence.

namespace qvolt::kernels {

using Complex = std::complex<double>;

enum class Backend {
  Scalar,
  Avx2,
  Neon,
};

const char* backend_name(Backend b);

// Backend used by zgemm/zaxpy. Picked once at startup from CPU features;
// the QVOLT_KERNEL environment variable ("scalar", "avx2", "neon") overrides.
Backend active_backend();

// Returns false if the requested backend is not compiled in / not supported
// by the running CPU. Intended for tests; not thread-safe against concurrent
// kernel calls.
bool set_backend(Backend b);

bool backend_available(Backend b);

// C (m x n) <- A (m x k) * B (k x n). C must not alias A or B.
void zgemm(const Complex* a, const Complex* b, Complex* c,
           std::size_t m, std::size_t k, std::size_t n);

// y <- y + alpha * x
void zaxpy(Complex alpha, const Complex* x, Complex* y, std::size_t n);

// Reference implementations, callable directly for equivalence tests.
namespace detail {
void zgemm_scalar(const Complex* a, const Complex* b, Complex* c,
                  std::size_t m, std::size_t k, std::size_t n);
void zaxpy_scalar(Complex alpha, const Complex* x, Complex* y, std::size_t n);
#if defined(QVOLT_KERNELS_AVX2)
void zgemm_avx2(const Complex* a, const Complex* b, Complex* c,
                std::size_t m, std::size_t k, std::size_t n);
void zaxpy_avx2(Complex alpha, const Complex* x, Complex* y, std::size_t n);
#endif
#if defined(QVOLT_KERNELS_NEON)
void zgemm_neon(const Complex* a, const Complex* b, Complex* c,
                std::size_t m, std::size_t k, std::size_t n);
void zaxpy_neon(Complex alpha, const Complex* x, Complex* y, std::size_t n);
#endif
}  // namespace detail

}  // namespace qvolt::kernels
