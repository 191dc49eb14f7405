#include "vacmix/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "vacmix/kernels.hpp"
#include "vacmix/parallel.hpp"

namespace vacmix {

namespace {
int g_threads = 0;
}

int default_threads() {
  if (g_threads > 0) return g_threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void set_default_threads(int n) { g_threads = n; }

CMat CMat::identity(int n) {
  CMat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMat& CMat::operator+=(const CMat& o) {
  kern::zaxpy(static_cast<int>(d_.size()), 1.0, o.d_.data(), d_.data());
  return *this;
}

CMat& CMat::operator-=(const CMat& o) {
  kern::zaxpy(static_cast<int>(d_.size()), -1.0, o.d_.data(), d_.data());
  return *this;
}

CMat& CMat::operator*=(cplx s) {
  kern::zscal(static_cast<int>(d_.size()), s, d_.data());
  return *this;
}

CMat CMat::adjoint() const {
  CMat m(c_, r_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

CMat CMat::transpose() const {
  CMat m(c_, r_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

cplx CMat::trace() const {
  cplx t = 0.0;
  for (int i = 0; i < std::min(r_, c_); ++i) t += (*this)(i, i);
  return t;
}

double CMat::max_abs() const {
  return kern::zmaxabs(static_cast<int>(d_.size()), d_.data());
}

double CMat::frobenius() const {
  return std::sqrt(kern::znrm2sq(static_cast<int>(d_.size()), d_.data()));
}

double CMat::one_norm() const {
  std::vector<double> colsum(c_, 0.0);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) colsum[j] += std::abs((*this)(i, j));
  return colsum.empty() ? 0.0 : *std::max_element(colsum.begin(), colsum.end());
}

CMat operator+(CMat a, const CMat& b) { return a += b; }
CMat operator-(CMat a, const CMat& b) { return a -= b; }
CMat operator*(cplx s, CMat a) { return a *= s; }

void matmul_into(const CMat& a, const CMat& b, CMat& c, cplx alpha, cplx beta) {
  if (a.cols() != b.rows() || c.rows() != a.rows() || c.cols() != b.cols())
    throw std::invalid_argument("matmul: dimension mismatch");
  const int m = a.rows(), n = b.cols(), k = a.cols();
  const double flops = 8.0 * m * n * k;
  const int nthreads = default_threads();
  if (flops < 4e7 || nthreads <= 1 || m < 2 * nthreads) {
    kern::zgemm(m, n, k, alpha, a.data(), a.cols(), b.data(), b.cols(), beta,
                c.data(), c.cols());
    return;
  }
  const int chunks = std::min(m, 4 * nthreads);
  const int rows_per = (m + chunks - 1) / chunks;
  parallel_for(chunks, [&](long ci) {
    const int lo = static_cast<int>(ci) * rows_per;
    const int hi = std::min(m, lo + rows_per);
    if (lo >= hi) return;
    kern::zgemm(hi - lo, n, k, alpha, a.data() + size_t(lo) * a.cols(),
                a.cols(), b.data(), b.cols(), beta,
                c.data() + size_t(lo) * c.cols(), c.cols());
  }, nthreads);
}

CMat matmul(const CMat& a, const CMat& b) {
  CMat c(a.rows(), b.cols());
  matmul_into(a, b, c);
  return c;
}

std::vector<cplx> matvec(const CMat& a, const std::vector<cplx>& x) {
  if (a.cols() != static_cast<int>(x.size()))
    throw std::invalid_argument("matvec: dimension mismatch");
  std::vector<cplx> y(a.rows());
  const int m = a.rows();
  const int nthreads = default_threads();
  if (static_cast<long>(m) * a.cols() < 4'000'000 || nthreads <= 1) {
    kern::zgemv(m, a.cols(), 1.0, a.data(), a.cols(), x.data(), 0.0, y.data());
    return y;
  }
  const int chunks = std::min(m, 4 * nthreads);
  const int rows_per = (m + chunks - 1) / chunks;
  parallel_for(chunks, [&](long ci) {
    const int lo = static_cast<int>(ci) * rows_per;
    const int hi = std::min(m, lo + rows_per);
    if (lo >= hi) return;
    kern::zgemv(hi - lo, a.cols(), 1.0, a.data() + size_t(lo) * a.cols(),
                a.cols(), x.data(), 0.0, y.data() + lo);
  }, nthreads);
  return y;
}

// ---------------------------------------------------------------------------
// LU with partial pivoting, right-looking with blocked trailing update.

LUFactor lu_factor(CMat a) {
  const int n = a.rows();
  if (n != a.cols()) throw std::invalid_argument("lu_factor: square required");
  std::vector<int> piv(n);
  const int nb = 48;
  for (int j0 = 0; j0 < n; j0 += nb) {
    const int j1 = std::min(n, j0 + nb);
    // unblocked panel factorization on columns [j0, j1)
    for (int j = j0; j < j1; ++j) {
      int p = j;
      double best = std::abs(a(j, j));
      for (int i = j + 1; i < n; ++i) {
        const double v = std::abs(a(i, j));
        if (v > best) { best = v; p = i; }
      }
      piv[j] = p;
      if (p != j)
        for (int k = 0; k < n; ++k) std::swap(a(j, k), a(p, k));
      const cplx pivot = a(j, j);
      if (pivot == cplx(0.0, 0.0)) continue;  // singular column, multipliers stay 0
      const cplx inv = 1.0 / pivot;
      for (int i = j + 1; i < n; ++i) {
        const cplx m = a(i, j) * inv;
        a(i, j) = m;
        if (m == cplx(0.0, 0.0)) continue;
        cplx* arow = &a(i, 0);
        const cplx* jrow = &a(j, 0);
        for (int k = j + 1; k < j1; ++k) arow[k] -= m * jrow[k];
      }
    }
    if (j1 == n) break;
    // U block row: solve L(panel) * U = A[j0:j1, j1:n]
    for (int j = j0; j < j1; ++j)
      for (int i = j + 1; i < j1; ++i) {
        const cplx m = a(i, j);
        if (m == cplx(0.0, 0.0)) continue;
        cplx* arow = &a(i, 0);
        const cplx* jrow = &a(j, 0);
        for (int k = j1; k < n; ++k) arow[k] -= m * jrow[k];
      }
    // trailing update A[j1:, j1:] -= L[j1:, j0:j1] * U[j0:j1, j1:]
    const int mrem = n - j1, krem = j1 - j0;
    const int nthreads = default_threads();
    const int chunks = std::min(mrem, std::max(1, 4 * nthreads));
    const int rows_per = (mrem + chunks - 1) / chunks;
    parallel_for(chunks, [&](long ci) {
      const int lo = j1 + static_cast<int>(ci) * rows_per;
      const int hi = std::min(n, lo + rows_per);
      if (lo >= hi) return;
      kern::zgemm(hi - lo, mrem, krem, cplx(-1.0), &a(lo, j0), n, &a(j0, j1), n,
                  cplx(1.0), &a(lo, j1), n);
    }, nthreads);
  }
  return {std::move(a), std::move(piv)};
}

CMat lu_solve(const LUFactor& f, CMat b) {
  const int n = f.lu.rows();
  if (b.rows() != n) throw std::invalid_argument("lu_solve: dimension mismatch");
  const int nrhs = b.cols();
  for (int j = 0; j < n; ++j) {
    const int p = f.piv[j];
    if (p != j)
      for (int k = 0; k < nrhs; ++k) std::swap(b(j, k), b(p, k));
  }
  const int nb = 48;
  // forward: L y = b (unit lower)
  for (int i0 = 0; i0 < n; i0 += nb) {
    const int i1 = std::min(n, i0 + nb);
    if (i0 > 0)
      kern::zgemm(i1 - i0, nrhs, i0, cplx(-1.0), &f.lu(i0, 0), n, b.data(),
                  nrhs, cplx(1.0), &b(i0, 0), nrhs);
    for (int i = i0; i < i1; ++i)
      for (int j = i0; j < i; ++j) {
        const cplx m = f.lu(i, j);
        if (m == cplx(0.0, 0.0)) continue;
        for (int k = 0; k < nrhs; ++k) b(i, k) -= m * b(j, k);
      }
  }
  // backward: U x = y
  for (int i0 = n; i0 > 0; i0 -= nb) {
    const int lo = std::max(0, i0 - nb);
    if (i0 < n)
      kern::zgemm(i0 - lo, nrhs, n - i0, cplx(-1.0), &f.lu(lo, i0), n,
                  &b(i0, 0), nrhs, cplx(1.0), &b(lo, 0), nrhs);
    for (int i = i0 - 1; i >= lo; --i) {
      for (int j = i + 1; j < i0; ++j) {
        const cplx m = f.lu(i, j);
        if (m == cplx(0.0, 0.0)) continue;
        for (int k = 0; k < nrhs; ++k) b(i, k) -= m * b(j, k);
      }
      const cplx d = f.lu(i, i);
      if (d == cplx(0.0, 0.0)) throw std::runtime_error("lu_solve: singular matrix");
      const cplx inv = 1.0 / d;
      for (int k = 0; k < nrhs; ++k) b(i, k) *= inv;
    }
  }
  return b;
}

// ---------------------------------------------------------------------------
// Matrix exponential, scaling and squaring with order-13 Pade.

CMat expm(const CMat& a) {
  const int n = a.rows();
  if (n != a.cols()) throw std::invalid_argument("expm: square required");
  static const double b[] = {64764752532480000.0, 32382376266240000.0,
                             7771770303897600.0, 1187353796428800.0,
                             129060195264000.0,  10559470521600.0,
                             670442572800.0,     33522128640.0,
                             1323241920.0,       40840800.0,
                             960960.0,           16380.0,
                             182.0,              1.0};
  const double theta13 = 5.371920351148152;
  const double nrm = a.one_norm();
  int s = 0;
  if (nrm > theta13) s = static_cast<int>(std::ceil(std::log2(nrm / theta13)));
  CMat as = a;
  if (s > 0) as *= cplx(std::ldexp(1.0, -s));

  const CMat id = CMat::identity(n);
  CMat a2 = matmul(as, as);
  CMat a4 = matmul(a2, a2);
  CMat a6 = matmul(a2, a4);

  CMat w = b[13] * a6 + b[11] * a4 + b[9] * a2;
  CMat u = matmul(a6, w);
  u += b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id;
  u = matmul(as, u);

  CMat w2 = b[12] * a6 + b[10] * a4 + b[8] * a2;
  CMat v = matmul(a6, w2);
  v += b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;

  CMat num = v + u;
  CMat den = v - u;
  CMat r = lu_solve(lu_factor(std::move(den)), std::move(num));
  for (int i = 0; i < s; ++i) r = matmul(r, r);
  return r;
}

// ---------------------------------------------------------------------------
// Complex Schur decomposition: Householder Hessenberg + shifted QR (explicit
// single shift with Givens rotations), then eigenvectors by back-substitution.

namespace {

struct Givens {
  double c;
  cplx s;
};

Givens make_givens(cplx f, cplx g) {
  if (g == cplx(0.0, 0.0)) return {1.0, 0.0};
  if (f == cplx(0.0, 0.0)) return {0.0, std::conj(g) / std::abs(g)};
  const double af = std::abs(f);
  const double d = std::sqrt(std::norm(f) + std::norm(g));
  return {af / d, (f / af) * (std::conj(g) / d)};
}

void hessenberg(CMat& h, CMat& q) {
  const int n = h.rows();
  q = CMat::identity(n);
  std::vector<cplx> v(n);
  for (int k = 0; k + 2 < n; ++k) {
    double nrm2 = 0.0;
    for (int i = k + 1; i < n; ++i) nrm2 += std::norm(h(i, k));
    const double nrm = std::sqrt(nrm2);
    if (nrm == 0.0) continue;
    cplx x0 = h(k + 1, k);
    const cplx phase = (x0 == cplx(0.0, 0.0)) ? cplx(1.0) : x0 / std::abs(x0);
    const cplx alpha = -phase * nrm;
    double vnorm2 = 0.0;
    for (int i = k + 1; i < n; ++i) {
      v[i] = h(i, k);
      if (i == k + 1) v[i] -= alpha;
      vnorm2 += std::norm(v[i]);
    }
    if (vnorm2 == 0.0) continue;
    const double tau = 2.0 / vnorm2;
    // left: H -= tau * v (v^H H) on rows k+1.., cols k..
    for (int j = k; j < n; ++j) {
      cplx s = 0.0;
      for (int i = k + 1; i < n; ++i) s += std::conj(v[i]) * h(i, j);
      s *= tau;
      for (int i = k + 1; i < n; ++i) h(i, j) -= s * v[i];
    }
    // right: H -= tau * (H v) v^H on all rows, cols k+1..
    for (int i = 0; i < n; ++i) {
      cplx s = 0.0;
      for (int j = k + 1; j < n; ++j) s += h(i, j) * v[j];
      s *= tau;
      for (int j = k + 1; j < n; ++j) h(i, j) -= s * std::conj(v[j]);
    }
    for (int i = 0; i < n; ++i) {
      cplx s = 0.0;
      for (int j = k + 1; j < n; ++j) s += q(i, j) * v[j];
      s *= tau;
      for (int j = k + 1; j < n; ++j) q(i, j) -= s * std::conj(v[j]);
    }
    for (int i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }
}

// Shifted QR on the Hessenberg matrix (implicit single-shift bulge chase,
// LAPACK zlahqr structure). Returns false only on iteration overflow.
bool schur_qr(CMat& h, CMat& q) {
  const int n = h.rows();
  const double eps = 2.22e-16;
  int hi = n - 1;
  long iter_total = 0;
  int iter_since_deflate = 0;
  while (hi > 0) {
    if (++iter_total > 60L * n * n + 2000) return false;
    for (int i = 0; i < hi; ++i) {
      const double tiny = eps * (std::abs(h(i, i)) + std::abs(h(i + 1, i + 1)));
      if (std::abs(h(i + 1, i)) <= tiny) h(i + 1, i) = 0.0;
    }
    if (h(hi, hi - 1) == cplx(0.0, 0.0)) {
      --hi;
      iter_since_deflate = 0;
      continue;
    }
    int lo = hi;
    while (lo > 0 && h(lo, lo - 1) != cplx(0.0, 0.0)) --lo;
    // Wilkinson shift from the trailing 2x2 of the active block
    cplx mu;
    {
      const cplx a11 = h(hi - 1, hi - 1), a12 = h(hi - 1, hi);
      const cplx a21 = h(hi, hi - 1), a22 = h(hi, hi);
      const cplx tr2 = 0.5 * (a11 - a22);
      const cplx disc = std::sqrt(tr2 * tr2 + a12 * a21);
      const cplx r1 = a22 + tr2 + disc;
      const cplx r2 = a22 + tr2 - disc;
      mu = (std::abs(r1 - a22) < std::abs(r2 - a22)) ? r1 : r2;
      if (++iter_since_deflate % 12 == 0)  // exceptional shift
        mu = a22 + cplx(std::abs(h(hi, hi - 1)), 0.0);
    }
    for (int i = lo; i < hi; ++i) {
      cplx f, g;
      if (i == lo) {
        f = h(lo, lo) - mu;
        g = h(lo + 1, lo);
      } else {
        f = h(i, i - 1);
        g = h(i + 1, i - 1);  // the bulge
      }
      const Givens gv = make_givens(f, g);
      if (i > lo) {
        h(i, i - 1) = gv.c * f + gv.s * g;
        h(i + 1, i - 1) = 0.0;
      }
      // left rotation on rows (i, i+1), remaining columns
      for (int j = i; j < n; ++j) {
        const cplx t1 = h(i, j), t2 = h(i + 1, j);
        h(i, j) = gv.c * t1 + gv.s * t2;
        h(i + 1, j) = -std::conj(gv.s) * t1 + gv.c * t2;
      }
      // right rotation on columns (i, i+1)
      const int rmax = std::min(i + 2, hi);
      for (int r = 0; r <= rmax; ++r) {
        const cplx t1 = h(r, i), t2 = h(r, i + 1);
        h(r, i) = gv.c * t1 + std::conj(gv.s) * t2;
        h(r, i + 1) = -gv.s * t1 + gv.c * t2;
      }
      for (int r = 0; r < n; ++r) {
        const cplx t1 = q(r, i), t2 = q(r, i + 1);
        q(r, i) = gv.c * t1 + std::conj(gv.s) * t2;
        q(r, i + 1) = -gv.s * t1 + gv.c * t2;
      }
    }
  }
  return true;
}

}  // namespace

EigResult eig(const CMat& a, bool want_vectors) {
  const int n = a.rows();
  if (n != a.cols()) throw std::invalid_argument("eig: square required");
  EigResult res;
  if (n == 0) return res;
  CMat t = a, q;
  hessenberg(t, q);
  if (!schur_qr(t, q)) throw std::runtime_error("eig: QR iteration failed to converge");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<cplx> vals(n);
  for (int i = 0; i < n; ++i) vals[i] = t(i, i);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    if (vals[x].real() != vals[y].real()) return vals[x].real() < vals[y].real();
    return vals[x].imag() < vals[y].imag();
  });
  res.values.resize(n);
  for (int i = 0; i < n; ++i) res.values[i] = vals[order[i]];
  if (!want_vectors) return res;

  const double tnorm = std::max(t.max_abs(), 1e-300);
  CMat vecs(n, n);
  std::vector<cplx> y(n);
  for (int col = 0; col < n; ++col) {
    const int i = order[col];
    const cplx lam = vals[i];
    std::fill(y.begin(), y.end(), cplx(0.0));
    y[i] = 1.0;
    for (int j = i - 1; j >= 0; --j) {
      cplx s = 0.0;
      for (int k = j + 1; k <= i; ++k) s += t(j, k) * y[k];
      cplx d = t(j, j) - lam;
      if (std::abs(d) < 1e-13 * tnorm)
        d = cplx(1e-13 * tnorm, 0.0);  // protect repeated eigenvalues
      y[j] = -s / d;
    }
    // x = Q y, then normalize
    double nrm2 = 0.0;
    for (int r = 0; r < n; ++r) {
      cplx s = 0.0;
      for (int k = 0; k <= i; ++k) s += q(r, k) * y[k];
      vecs(r, col) = s;
      nrm2 += std::norm(s);
    }
    const double inv = 1.0 / std::sqrt(nrm2);
    for (int r = 0; r < n; ++r) vecs(r, col) *= inv;
  }
  res.vectors = std::move(vecs);

  // 1-norm condition estimate of the eigenvector basis
  try {
    LUFactor f = lu_factor(res.vectors);
    CMat inv = lu_solve(f, CMat::identity(n));
    res.vector_condition = res.vectors.one_norm() * inv.one_norm();
  } catch (const std::exception&) {
    res.vector_condition = std::numeric_limits<double>::infinity();
  }
  res.defective_flag = !(res.vector_condition <= 1e12);
  return res;
}

// ---------------------------------------------------------------------------

SymEig jacobi_symmetric(std::vector<std::vector<double>> a) {
  const int n = static_cast<int>(a.size());
  std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) v[i][i] = 1.0;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
    if (off < 1e-30) break;
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = v[k][p], vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return a[x][x] < a[y][y]; });
  SymEig res;
  res.values.resize(n);
  res.vecs.assign(n, std::vector<double>(n));
  for (int k = 0; k < n; ++k) {
    res.values[k] = a[order[k]][order[k]];
    for (int i = 0; i < n; ++i) res.vecs[k][i] = v[i][order[k]];
  }
  return res;
}

std::vector<std::vector<double>> real_nullspace(
    const std::vector<std::vector<double>>& m, double rel_tol) {
  const int rows = static_cast<int>(m.size());
  const int cols = rows > 0 ? static_cast<int>(m[0].size()) : 0;
  if (cols == 0) return {};
  // Column-pivoted Householder QR of M^T (cols x rows); pivoting keeps the
  // diagonal of R rank-revealing even when the leading rows of M are
  // dependent. null(M) is spanned by the trailing Q columns.
  const int nr = cols, nc = rows;
  std::vector<std::vector<double>> r(nr, std::vector<double>(nc, 0.0));
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) r[i][j] = m[j][i];
  std::vector<std::vector<double>> q(nr, std::vector<double>(nr, 0.0));
  for (int i = 0; i < nr; ++i) q[i][i] = 1.0;
  const int steps = std::min(nr, nc);
  std::vector<double> v(nr);
  int rank = 0;
  double dmax = 0.0;
  for (int k = 0; k < steps; ++k) {
    // pivot: remaining column with the largest norm below row k
    int piv = k;
    double best = -1.0;
    for (int j = k; j < nc; ++j) {
      double s = 0.0;
      for (int i = k; i < nr; ++i) s += r[i][j] * r[i][j];
      if (s > best) {
        best = s;
        piv = j;
      }
    }
    if (piv != k)
      for (int i = 0; i < nr; ++i) std::swap(r[i][k], r[i][piv]);
    const double nrm = std::sqrt(std::max(best, 0.0));
    dmax = std::max(dmax, nrm);
    if (nrm <= rel_tol * std::max(dmax, 1e-300)) break;  // rest is numerically null
    ++rank;
    if (k == nr - 1) break;  // no reflection needed for the last row
    const double alpha = r[k][k] >= 0 ? -nrm : nrm;
    double vnorm2 = 0.0;
    for (int i = k; i < nr; ++i) {
      v[i] = r[i][k];
      if (i == k) v[i] -= alpha;
      vnorm2 += v[i] * v[i];
    }
    if (vnorm2 == 0.0) continue;
    const double tau = 2.0 / vnorm2;
    for (int j = k; j < nc; ++j) {
      double s = 0.0;
      for (int i = k; i < nr; ++i) s += v[i] * r[i][j];
      s *= tau;
      for (int i = k; i < nr; ++i) r[i][j] -= s * v[i];
    }
    for (int j = 0; j < nr; ++j) {
      double s = 0.0;
      for (int i = k; i < nr; ++i) s += v[i] * q[i][j];
      s *= tau;
      for (int i = k; i < nr; ++i) q[i][j] -= s * v[i];
    }
  }
  std::vector<std::vector<double>> null;
  for (int c = rank; c < nr; ++c) {
    std::vector<double> col(nr);
    for (int i = 0; i < nr; ++i) col[i] = q[c][i];  // row c of Q == column of Q^T
    null.push_back(std::move(col));
  }
  return null;
}

}  // namespace vacmix
