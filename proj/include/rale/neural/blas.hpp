// Row-major GEMM bridge onto OpenBLAS, pinned to one thread per call;
// parallelism lives at the sample level so results never depend on the
// BLAS scheduler.
#pragma once

#include <cstdlib>
#include <mutex>

#include <cblas.h>

extern "C" {
// Provided by OpenBLAS (linked explicitly); not part of the CBLAS interface.
void openblas_set_num_threads(int);
}

namespace rale::nn::blas {

namespace detail {

// OpenBLAS's runtime CPU detection can fall back to a generic kernel under
// some hypervisors even when AVX2/AVX-512 is exposed to the guest. The
// OPENBLAS_CORETYPE hint must be in the environment before the library
// initializes, which happens on the first BLAS call.
inline void apply_core_hint() {
#if defined(__x86_64__) || defined(__i386__)
  if (std::getenv("OPENBLAS_CORETYPE") == nullptr) {
    __builtin_cpu_init();
    if (__builtin_cpu_supports("avx512f")) {
      ::setenv("OPENBLAS_CORETYPE", "SKYLAKEX", 0);
    } else if (__builtin_cpu_supports("avx2")) {
      ::setenv("OPENBLAS_CORETYPE", "HASWELL", 0);
    }
  }
#endif
}

inline void init_once() {
  static std::once_flag flag;
  std::call_once(flag, [] {
    apply_core_hint();
    openblas_set_num_threads(1);
  });
}

}  // namespace detail

/// C[m,n] = alpha * op(A)[m,k] * op(B)[k,n] + beta * C, all row-major.
inline void gemm(bool trans_a, bool trans_b, int m, int n, int k, float alpha,
                 const float* a, int lda, const float* b, int ldb, float beta,
                 float* c, int ldc) {
  detail::init_once();
  cblas_sgemm(CblasRowMajor, trans_a ? CblasTrans : CblasNoTrans,
              trans_b ? CblasTrans : CblasNoTrans, m, n, k, alpha, a, lda, b,
              ldb, beta, c, ldc);
}

inline void gemm(bool trans_a, bool trans_b, int m, int n, int k, double alpha,
                 const double* a, int lda, const double* b, int ldb,
                 double beta, double* c, int ldc) {
  detail::init_once();
  cblas_dgemm(CblasRowMajor, trans_a ? CblasTrans : CblasNoTrans,
              trans_b ? CblasTrans : CblasNoTrans, m, n, k, alpha, a, lda, b,
              ldb, beta, c, ldc);
}

}  // namespace rale::nn::blas
