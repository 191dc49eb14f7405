#ifndef VACMIX_KERNELS_HPP
#define VACMIX_KERNELS_HPP

#include <complex>

// Dense complex kernels behind the linear-algebra layer. Scalar reference
// implementations and AVX2+FMA variants compiled side by side; the active
// variant is selected at runtime from CPUID (override with VACMIX_SIMD=scalar
// or force-select via set_isa). Both variants are equivalence-tested.

namespace vacmix::kern {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2 };

Isa active_isa();
void set_isa(Isa isa);
bool cpu_has_avx2();

// C (m x n) = alpha * A (m x k) * B (k x n) + beta * C, row-major.
void zgemm(int m, int n, int k, cplx alpha, const cplx* a, int lda,
           const cplx* b, int ldb, cplx beta, cplx* c, int ldc);

// y (m) = alpha * A (m x n) * x + beta * y, row-major.
void zgemv(int m, int n, cplx alpha, const cplx* a, int lda, const cplx* x,
           cplx beta, cplx* y);

void zaxpy(int n, cplx alpha, const cplx* x, cplx* y);
void zscal(int n, cplx alpha, cplx* x);
double znrm2sq(int n, const cplx* x);
double zmaxabs(int n, const cplx* x);

namespace scalar {
void zgemm(int m, int n, int k, cplx alpha, const cplx* a, int lda,
           const cplx* b, int ldb, cplx beta, cplx* c, int ldc);
void zgemv(int m, int n, cplx alpha, const cplx* a, int lda, const cplx* x,
           cplx beta, cplx* y);
void zaxpy(int n, cplx alpha, const cplx* x, cplx* y);
void zscal(int n, cplx alpha, cplx* x);
double znrm2sq(int n, const cplx* x);
double zmaxabs(int n, const cplx* x);
}  // namespace scalar

namespace avx2 {
bool available();
void zgemm(int m, int n, int k, cplx alpha, const cplx* a, int lda,
           const cplx* b, int ldb, cplx beta, cplx* c, int ldc);
void zgemv(int m, int n, cplx alpha, const cplx* a, int lda, const cplx* x,
           cplx beta, cplx* y);
void zaxpy(int n, cplx alpha, const cplx* x, cplx* y);
void zscal(int n, cplx alpha, cplx* x);
double znrm2sq(int n, const cplx* x);
double zmaxabs(int n, const cplx* x);
}  // namespace avx2

}  // namespace vacmix::kern

#endif
