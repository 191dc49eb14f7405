#include "vacmix/kernels.hpp"

#include <cmath>

// Reference kernels. Kept deliberately plain: these define the semantics the
// SIMD variants are tested against.

namespace vacmix::kern::scalar {

void zscal(int n, cplx alpha, cplx* x) {
  if (alpha == cplx(1.0, 0.0)) return;
  if (alpha == cplx(0.0, 0.0)) {
    for (int i = 0; i < n; ++i) x[i] = 0.0;
    return;
  }
  for (int i = 0; i < n; ++i) x[i] *= alpha;
}

void zaxpy(int n, cplx alpha, const cplx* x, cplx* y) {
  if (alpha == cplx(0.0, 0.0)) return;
  for (int i = 0; i < n; ++i) y[i] += alpha * x[i];
}

double znrm2sq(int n, const cplx* x) {
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  return s;
}

double zmaxabs(int n, const cplx* x) {
  double s = 0.0;
  for (int i = 0; i < n; ++i) s = std::max(s, std::abs(x[i]));
  return s;
}

void zgemm(int m, int n, int k, cplx alpha, const cplx* a, int lda,
           const cplx* b, int ldb, cplx beta, cplx* c, int ldc) {
  for (int i = 0; i < m; ++i) {
    cplx* crow = c + static_cast<long>(i) * ldc;
    zscal(n, beta, crow);
    const cplx* arow = a + static_cast<long>(i) * lda;
    for (int p = 0; p < k; ++p) {
      const cplx av = alpha * arow[p];
      if (av == cplx(0.0, 0.0)) continue;
      const cplx* brow = b + static_cast<long>(p) * ldb;
      for (int j = 0; j < n; ++j) crow[j] += av * brow[j];
    }
  }
}

void zgemv(int m, int n, cplx alpha, const cplx* a, int lda, const cplx* x,
           cplx beta, cplx* y) {
  for (int i = 0; i < m; ++i) {
    const cplx* arow = a + static_cast<long>(i) * lda;
    cplx acc = 0.0;
    for (int j = 0; j < n; ++j) acc += arow[j] * x[j];
    y[i] = alpha * acc + beta * y[i];
  }
}

}  // namespace vacmix::kern::scalar
