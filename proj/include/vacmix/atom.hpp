#ifndef VACMIX_ATOM_HPP
#define VACMIX_ATOM_HPP

#include <array>
#include <string>
#include <vector>

#include "vacmix/constants.hpp"

namespace vacmix {

// Hydrogen fine-structure basis label. Half-integers are stored doubled
// (twice_j, twice_mj) so all angular-momentum bookkeeping is exact.
struct QuantumState {
  int n = 0;
  int l = 0;
  int twice_j = 0;
  int twice_mj = 0;
  double energy = 0.0;  // Hartree

  std::string label() const;
  bool operator==(const QuantumState& o) const {
    return n == o.n && l == o.l && twice_j == o.twice_j && twice_mj == o.twice_mj;
  }
};

struct Basis {
  std::vector<QuantumState> states;
  int n_max = 0;
  double alpha = kFineStructure;

  int size() const { return static_cast<int>(states.size()); }
  // index of (n, l, twice_j, twice_mj); -1 when absent
  int find(int n, int l, int twice_j, int twice_mj) const;
  // indices of all states in Bohr level n
  std::vector<int> level_indices(int n) const;
};

// Fine-structure energy of level (n, j) in Hartree. Throws std::invalid_argument
// for (n, j) combinations with no valid l.
double fine_structure_energy(int n, int twice_j, double alpha = kFineStructure);

// All (n, l, j, m_j) with n <= n_max, ordered by (n, l, j, m_j). alpha = 0
// gives the fine-structure-free idealization.
Basis enumerate_basis(int n_max, double alpha = kFineStructure);

// <n l | r | n' l'> over hydrogenic radial functions, in a0. |l-l'| must be 1.
// Closed form (Gordon-type hypergeometric); the quadrature version is the
// independent oracle used for validation.
double radial_integral(int n, int l, int np, int lp);
double radial_integral_quadrature(int n, int l, int np, int lp,
                                  double rel_tol = 1e-12);

// Normalized radial wavefunction R_nl(r), r in a0.
double hydrogen_radial(int n, int l, double r);

// Clebsch-Gordan <j1 m1 j2 m2 | J M> with doubled arguments.
double clebsch_gordan(int tj1, int tm1, int tj2, int tm2, int tJ, int tM);

// <l' m' | C^1_q | l m> with C^1 the rank-1 unnormalized spherical harmonic.
double c1_matrix_element(int lp, int mp, int l, int m, int q);

// Sparse table of real dipole matrix elements d^delta (spherical components
// delta in {+1,-1,0}), units e*a0. Entry (a, b) is <a| d^delta |b>, nonzero
// only for delta-l = +-1 and m_a = m_b + delta.
struct DipoleTable {
  struct Entry {
    int a, b, delta;
    double value;
  };

  int dim = 0;
  std::array<std::vector<double>, 3> comp;  // dense, index via dslot()
  std::vector<Entry> entries;

  static int dslot(int delta);  // +1 -> 0, -1 -> 1, 0 -> 2
  double get(int delta, int a, int b) const {
    return comp[dslot(delta)][static_cast<size_t>(a) * dim + b];
  }
};

DipoleTable build_dipole_table(const Basis& basis);

}  // namespace vacmix

#endif
