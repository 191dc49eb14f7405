#ifndef VACMIX_EFFECTIVE_HPP
#define VACMIX_EFFECTIVE_HPP

#include <optional>
#include <vector>

#include "vacmix/mastereq.hpp"

namespace vacmix {

// Projected non-Hermitian Hamiltonian for one (n, m_j, l-parity) subspace.
struct EffectiveBlock {
  int n = 0;
  int twice_mj = 0;
  int l_parity = 0;  // 0 even, 1 odd
  std::vector<int> basis_indices;
  std::vector<QuantumState> labels;
  CMat h_eff;  // Hartree

  // filled by eigenanalyze
  std::vector<cplx> eigenvalues;  // ordered by energy (Re)
  CMat eigenvectors;              // unit-norm right eigenvectors, columns
  bool defective = false;
  double vector_condition = 0.0;

  int dim() const { return static_cast<int>(basis_indices.size()); }
  std::vector<double> energies() const;    // Re(eig), Hartree
  std::vector<double> decay_rates() const; // -2 Im(eig), atomic rate units
};

// Bohr-level projection: diagonal energies plus hbar*(D^dag D
// - i/2 Sigma^dag Sigma) restricted to Bohr level n; refilling terms dropped.
// Requires a geometric-mean (partially secularized) generator.
CMat project_effective(const GeneratorSet& g, const Basis& basis, int n);

// Splits the level-n effective Hamiltonian into (m_j, l-parity) blocks and
// verifies the cross-block couplings vanish.
std::vector<EffectiveBlock> block_decompose(const CMat& h_level,
                                            const Basis& basis, int n);

void eigenanalyze(EffectiveBlock& block);

// Inverse fourth moment of a unit-norm vector in the block basis.
double participation_ratio(const std::vector<cplx>& psi);

// Null vector of the stacked decay map out of the block, if the map is rank
// deficient (the protected "dark" superposition).
std::optional<std::vector<cplx>> dark_state_certificate(
    const EffectiveBlock& block, const GeneratorSet& g);

struct SweepPoint {
  std::vector<double> energies;           // Hartree, tracked order
  std::vector<double> energies_centered;  // minus per-point mean
  std::vector<double> rates;
  std::vector<double> participation;
  double participation_avg = 0.0;
  std::vector<double> ref_energies;           // diagonal-only reference
  std::vector<double> ref_energies_centered;
  std::vector<double> ref_rates;
  bool tie_broken = false;
};

struct SweepTable {
  std::vector<SweepPoint> points;
  std::vector<QuantumState> labels;
  int tracked_states = 0;
};

// Greedy maximal-|overlap|^2 assignment of current eigenvectors (columns of
// `cur`) to previous ones. Returns the permutation such that cur column
// assign[i] continues prev column i, plus a flag when two overlaps were
// within 1e-6 and the assignment fell back to energy order.
std::pair<std::vector<int>, bool> track_assignment(const CMat& prev,
                                                   const CMat& cur);

// One generator per sweep point; eigenstates matched across adjacent points
// by maximal-overlap assignment (ties broken by energy order and recorded).
SweepTable sweep_and_track(const std::vector<SpectralModel>& models,
                           const Basis& basis, const DipoleTable& dip, int n,
                           int twice_mj, int l_parity, bool counter_rotating,
                           const std::vector<int>& intermediate_levels = {},
                           int threads = 0);

}  // namespace vacmix

#endif
