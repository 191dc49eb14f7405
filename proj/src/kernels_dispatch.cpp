#include "vacmix/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace vacmix::kern {

bool cpu_has_avx2() {
#if defined(__x86_64__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma") &&
         avx2::available();
#else
  return false;
#endif
}

namespace {

Isa pick_default() {
  if (const char* env = std::getenv("VACMIX_SIMD")) {
    if (std::strcmp(env, "scalar") == 0) return Isa::scalar;
    if (std::strcmp(env, "avx2") == 0 && cpu_has_avx2()) return Isa::avx2;
  }
  return cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
}

Isa g_isa = pick_default();

}  // namespace

Isa active_isa() { return g_isa; }

void set_isa(Isa isa) {
  g_isa = (isa == Isa::avx2 && cpu_has_avx2()) ? Isa::avx2 : Isa::scalar;
}

void zgemm(int m, int n, int k, cplx alpha, const cplx* a, int lda,
           const cplx* b, int ldb, cplx beta, cplx* c, int ldc) {
  if (g_isa == Isa::avx2)
    avx2::zgemm(m, n, k, alpha, a, lda, b, ldb, beta, c, ldc);
  else
    scalar::zgemm(m, n, k, alpha, a, lda, b, ldb, beta, c, ldc);
}

void zgemv(int m, int n, cplx alpha, const cplx* a, int lda, const cplx* x,
           cplx beta, cplx* y) {
  if (g_isa == Isa::avx2)
    avx2::zgemv(m, n, alpha, a, lda, x, beta, y);
  else
    scalar::zgemv(m, n, alpha, a, lda, x, beta, y);
}

void zaxpy(int n, cplx alpha, const cplx* x, cplx* y) {
  if (g_isa == Isa::avx2)
    avx2::zaxpy(n, alpha, x, y);
  else
    scalar::zaxpy(n, alpha, x, y);
}

void zscal(int n, cplx alpha, cplx* x) {
  if (g_isa == Isa::avx2)
    avx2::zscal(n, alpha, x);
  else
    scalar::zscal(n, alpha, x);
}

double znrm2sq(int n, const cplx* x) {
  return g_isa == Isa::avx2 ? avx2::znrm2sq(n, x) : scalar::znrm2sq(n, x);
}

double zmaxabs(int n, const cplx* x) {
  return g_isa == Isa::avx2 ? avx2::zmaxabs(n, x) : scalar::zmaxabs(n, x);
}

}  // namespace vacmix::kern
