#ifndef VACMIX_LINALG_HPP
#define VACMIX_LINALG_HPP

#include <complex>
#include <vector>

namespace vacmix {

using cplx = std::complex<double>;

// Dense row-major complex matrix. Value semantics throughout.
class CMat {
 public:
  CMat() = default;
  CMat(int rows, int cols) : r_(rows), c_(cols), d_(size_t(rows) * cols) {}
  static CMat identity(int n);

  int rows() const { return r_; }
  int cols() const { return c_; }
  cplx* data() { return d_.data(); }
  const cplx* data() const { return d_.data(); }
  cplx& operator()(int i, int j) { return d_[size_t(i) * c_ + j]; }
  const cplx& operator()(int i, int j) const { return d_[size_t(i) * c_ + j]; }

  CMat& operator+=(const CMat& o);
  CMat& operator-=(const CMat& o);
  CMat& operator*=(cplx s);

  CMat adjoint() const;
  CMat transpose() const;
  cplx trace() const;
  double max_abs() const;
  double frobenius() const;
  double one_norm() const;  // max column sum

  bool empty() const { return d_.empty(); }

 private:
  int r_ = 0, c_ = 0;
  std::vector<cplx> d_;
};

CMat operator+(CMat a, const CMat& b);
CMat operator-(CMat a, const CMat& b);
CMat operator*(cplx s, CMat a);

// C = A*B via the kernel layer; large products split across threads.
CMat matmul(const CMat& a, const CMat& b);
void matmul_into(const CMat& a, const CMat& b, CMat& c, cplx alpha = 1.0,
                 cplx beta = 0.0);
std::vector<cplx> matvec(const CMat& a, const std::vector<cplx>& x);

// LU factorization with partial pivoting (in place; blocked trailing update).
struct LUFactor {
  CMat lu;
  std::vector<int> piv;
};
LUFactor lu_factor(CMat a);
// Solves A X = B given the factorization. B is overwritten column-block-wise.
CMat lu_solve(const LUFactor& f, CMat b);

// exp(A) by scaling-and-squaring with order-13 Pade (Higham style).
CMat expm(const CMat& a);

// Eigendecomposition of a general complex matrix via Hessenberg reduction and
// shifted QR to Schur form, eigenvectors by back-substitution.
struct EigResult {
  std::vector<cplx> values;       // sorted by (Re, Im)
  CMat vectors;                   // columns are unit-norm right eigenvectors
  bool defective_flag = false;    // set when eigenvector basis is ill-conditioned
  double vector_condition = 0.0;  // 1-norm condition estimate of V
};
EigResult eig(const CMat& a, bool want_vectors = true);

// Eigenvalues/vectors of a real symmetric matrix (cyclic Jacobi).
struct SymEig {
  std::vector<double> values;            // ascending
  std::vector<std::vector<double>> vecs; // vecs[k] is the k-th eigenvector
};
SymEig jacobi_symmetric(std::vector<std::vector<double>> a);

// Orthonormal basis of the null space of a real matrix (rows x cols) via
// Householder QR of the transpose. rel_tol is relative to the largest
// diagonal of R.
std::vector<std::vector<double>> real_nullspace(
    const std::vector<std::vector<double>>& m, double rel_tol = 1e-12);

}  // namespace vacmix

#endif
