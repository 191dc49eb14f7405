#ifndef VACMIX_MASTEREQ_HPP
#define VACMIX_MASTEREQ_HPP

#include <string>
#include <vector>

#include "vacmix/atom.hpp"
#include "vacmix/bath.hpp"
#include "vacmix/linalg.hpp"

namespace vacmix {

enum class SecMode { None, Partial, Full, PartialGeometricMean };

// Sparse Bloch-Redfield tensor: one record per ordered 4-tuple (a, b, c, d)
// surviving the dipole selection rules, with the four kernel evaluations.
// Values are Lambda_{ca,db}(w) = d_ca d_db lambda(w) etc., in Hartree units.
struct BRTensor {
  struct Tuple {
    int a, b, c, d;
    int delta;
    double lam_bd, lam_ac;  // shift kernel at omega_bd / omega_ac
    double gam_bd, gam_ac;  // decay kernel at omega_bd / omega_ac
  };
  std::vector<Tuple> tuples;
  int dim = 0;
  bool counter_rotating = true;
  bool partially_secularized = false;
};

BRTensor build_br_tensor(const Basis& basis, const DipoleTable& dip,
                         const SpectralModel& model, bool counter_rotating);

// Removes tuples whose (a, b) pair spans two Bohr levels; within-level cross
// terms are retained.
BRTensor partial_secularize(const BRTensor& t, const Basis& basis);

struct JumpOp {
  CMat op;         // N x N, real-valued entries stored complex
  CMat opdag_op;   // cached op^dag * op
  int delta = 0;
  int level = -1;     // source Bohr level for geometric-mean operators
  double omega = 0.0; // transition frequency for fully secular operators
};

// Shift operator D with |lambda|^(1/2) magnitudes and the common sign of
// lambda factored out per intermediate state (row).
struct ShiftOp {
  CMat op;
  std::vector<double> row_sign;
  int delta = 0;
  int level = -1;
};

struct GeneratorSet {
  std::vector<double> h_diag;  // bare Hamiltonian diagonal, Hartree
  CMat h_shift;                // H_CP (or secular shift), Hermitian
  std::vector<JumpOp> jumps;
  std::vector<ShiftOp> shifts;
  SecMode sec = SecMode::None;
  bool counter_rotating = true;

  int dim() const { return static_cast<int>(h_diag.size()); }
  CMat total_hamiltonian() const;  // diag + h_shift
};

// Geometric-mean Lindblad generator (partial secularization built in).
// intermediate_levels restricts the states reachable by the Sigma/D operators
// (empty = all levels). Throws when the lambda sign condition is violated,
// naming the offending tuple.
GeneratorSet geometric_mean_lindblad(const Basis& basis, const DipoleTable& dip,
                                     const SpectralModel& model,
                                     bool counter_rotating,
                                     const std::vector<int>& intermediate_levels = {});

// Fully secularized Lindblad generator: one jump operator per (transition
// frequency group, spherical component), shift couples only degenerate pairs.
GeneratorSet full_secularize(const Basis& basis, const DipoleTable& dip,
                             const SpectralModel& model, bool counter_rotating);

// d rho / dt for the Lindblad form. include_refilling = false drops the
// J rho J^dag quantum-jump terms (effective non-Hermitian dynamics on the
// full space).
CMat lindblad_rhs(const GeneratorSet& g, const CMat& rho,
                  bool include_refilling = true);

// Dense N^2 x N^2 superoperator of the Lindblad generator (row-major vec).
CMat lindblad_superop(const GeneratorSet& g, bool include_refilling = true);

// Dense superoperator of the (possibly partially secularized) BR tensor.
CMat br_superop(const BRTensor& t, const Basis& basis);

// Operator-factorized BR right-hand side for propagation without the N^2
// superoperator.
struct BROperator {
  CMat m_left, m_right;
  std::vector<std::pair<CMat, CMat>> sandwiches;  // sum of A rho B
  int n = 0;
  CMat rhs(const CMat& rho) const;
};
BROperator build_br_operator(const Basis& basis, const DipoleTable& dip,
                             const SpectralModel& model, bool counter_rotating,
                             bool partial);

// Kossakowski matrix of the geometric-mean decay part for one spherical
// component, over the dipole-pair index list.
struct Kossakowski {
  std::vector<std::pair<int, int>> pairs;  // (target x, source b)
  std::vector<std::vector<double>> matrix;
};
Kossakowski kossakowski_matrix(const GeneratorSet& g, int delta);

}  // namespace vacmix

#endif
