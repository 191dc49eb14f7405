#include "vacmix/kernels.hpp"

#include <cmath>

#if defined(VACMIX_BUILD_AVX2) && defined(__x86_64__)
#define VACMIX_AVX2_ENABLED 1
#include <immintrin.h>
#else
#define VACMIX_AVX2_ENABLED 0
#endif

namespace vacmix::kern::avx2 {

bool available() { return VACMIX_AVX2_ENABLED != 0; }

#if VACMIX_AVX2_ENABLED

// A __m256d holds two interleaved complex doubles (re0, im0, re1, im1).
// Complex multiply-accumulate of a scalar (ar + i*ai) against a pair vector:
//   acc += (ar + i*ai) * v
// is fmaddsub(ar_v, v, ai_v * swap(v)) accumulated pairwise.
static inline __m256d cmul_acc(__m256d acc, __m256d ar, __m256d ai, __m256d v) {
  const __m256d vswap = _mm256_permute_pd(v, 0x5);  // (im0, re0, im1, re1)
  const __m256d t = _mm256_mul_pd(ai, vswap);
  return _mm256_add_pd(acc, _mm256_fmaddsub_pd(ar, v, t));
}

void zscal(int n, cplx alpha, cplx* x) {
  if (alpha == cplx(1.0, 0.0)) return;
  double* xd = reinterpret_cast<double*>(x);
  if (alpha == cplx(0.0, 0.0)) {
    const __m256d z = _mm256_setzero_pd();
    int i = 0;
    for (; i + 2 <= n; i += 2) _mm256_storeu_pd(xd + 2 * i, z);
    for (; i < n; ++i) x[i] = 0.0;
    return;
  }
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  int i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_loadu_pd(xd + 2 * i);
    const __m256d vswap = _mm256_permute_pd(v, 0x5);
    _mm256_storeu_pd(xd + 2 * i,
                     _mm256_fmaddsub_pd(ar, v, _mm256_mul_pd(ai, vswap)));
  }
  for (; i < n; ++i) x[i] *= alpha;
}

void zaxpy(int n, cplx alpha, const cplx* x, cplx* y) {
  if (alpha == cplx(0.0, 0.0)) return;
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  int i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_loadu_pd(xd + 2 * i);
    const __m256d acc = _mm256_loadu_pd(yd + 2 * i);
    _mm256_storeu_pd(yd + 2 * i, cmul_acc(acc, ar, ai, v));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

double znrm2sq(int n, const cplx* x) {
  const double* xd = reinterpret_cast<const double*>(x);
  __m256d acc = _mm256_setzero_pd();
  int i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_loadu_pd(xd + 2 * i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double s = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < n; ++i)
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
    double* cd = reinterpret_cast<double*>(crow);
    const cplx* arow = a + static_cast<long>(i) * lda;
    for (int p = 0; p < k; ++p) {
      const cplx av = alpha * arow[p];
      if (av == cplx(0.0, 0.0)) continue;
      const double* bd =
          reinterpret_cast<const double*>(b + static_cast<long>(p) * ldb);
      const __m256d ar = _mm256_set1_pd(av.real());
      const __m256d ai = _mm256_set1_pd(av.imag());
      int j = 0;
      for (; j + 4 <= n; j += 4) {
        __m256d c0 = _mm256_loadu_pd(cd + 2 * j);
        __m256d c1 = _mm256_loadu_pd(cd + 2 * j + 4);
        c0 = cmul_acc(c0, ar, ai, _mm256_loadu_pd(bd + 2 * j));
        c1 = cmul_acc(c1, ar, ai, _mm256_loadu_pd(bd + 2 * j + 4));
        _mm256_storeu_pd(cd + 2 * j, c0);
        _mm256_storeu_pd(cd + 2 * j + 4, c1);
      }
      for (; j + 2 <= n; j += 2) {
        __m256d c0 = _mm256_loadu_pd(cd + 2 * j);
        c0 = cmul_acc(c0, ar, ai, _mm256_loadu_pd(bd + 2 * j));
        _mm256_storeu_pd(cd + 2 * j, c0);
      }
      for (; j < n; ++j)
        crow[j] += av * b[static_cast<long>(p) * ldb + j];
    }
  }
}

void zgemv(int m, int n, cplx alpha, const cplx* a, int lda, const cplx* x,
           cplx beta, cplx* y) {
  const double* xd = reinterpret_cast<const double*>(x);
  for (int i = 0; i < m; ++i) {
    const cplx* arow = a + static_cast<long>(i) * lda;
    const double* ad = reinterpret_cast<const double*>(arow);
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    int j = 0;
    for (; j + 2 <= n; j += 2) {
      const __m256d av = _mm256_loadu_pd(ad + 2 * j);
      const __m256d xv = _mm256_loadu_pd(xd + 2 * j);
      const __m256d xswap = _mm256_permute_pd(xv, 0x5);
      acc_re = _mm256_fmadd_pd(av, xv, acc_re);    // (ar*xr, ai*xi, ...)
      acc_im = _mm256_fmadd_pd(av, xswap, acc_im); // (ar*xi, ai*xr, ...)
    }
    alignas(32) double re[4], im[4];
    _mm256_store_pd(re, acc_re);
    _mm256_store_pd(im, acc_im);
    cplx acc(re[0] - re[1] + re[2] - re[3], im[0] + im[1] + im[2] + im[3]);
    for (; j < n; ++j) acc += arow[j] * x[j];
    y[i] = alpha * acc + beta * y[i];
  }
}

#else  // stubs when the TU is built without AVX2 support

void zscal(int n, cplx a, cplx* x) { scalar::zscal(n, a, x); }
void zaxpy(int n, cplx a, const cplx* x, cplx* y) { scalar::zaxpy(n, a, x, y); }
double znrm2sq(int n, const cplx* x) { return scalar::znrm2sq(n, x); }
double zmaxabs(int n, const cplx* x) { return scalar::zmaxabs(n, x); }
void zgemm(int m, int n, int k, cplx alpha, const cplx* a, int lda,
           const cplx* b, int ldb, cplx beta, cplx* c, int ldc) {
  scalar::zgemm(m, n, k, alpha, a, lda, b, ldb, beta, c, ldc);
}
void zgemv(int m, int n, cplx alpha, const cplx* a, int lda, const cplx* x,
           cplx beta, cplx* y) {
  scalar::zgemv(m, n, alpha, a, lda, x, beta, y);
}

#endif

}  // namespace vacmix::kern::avx2
