#ifndef VACMIX_DYNAMICS_HPP
#define VACMIX_DYNAMICS_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vacmix/effective.hpp"
#include "vacmix/mastereq.hpp"

namespace vacmix {

// ---------------------------------------------------------------------------
// Generic integrators.

struct RKOptions {
  double rtol = 1e-9;
  double atol = 1e-12;
};

// Dormand-Prince 5(4) over a complex state vector; calls on_sample at every
// grid time (grid must start at 0 and be strictly increasing). Throws on step
// underflow.
void propagate_rk(
    const std::function<void(const std::vector<cplx>&, std::vector<cplx>&)>& rhs,
    const std::vector<cplx>& y0, const std::vector<double>& t_grid,
    const RKOptions& opt,
    const std::function<void(int, const std::vector<cplx>&)>& on_sample);

// Exact stepping for a time-independent generator: v_{k+1} = exp(L dt) v_k.
void propagate_superop(const CMat& superop, const std::vector<cplx>& v0,
                       double dt, int nsteps,
                       const std::function<void(int, const std::vector<cplx>&)>& on_sample);

// ---------------------------------------------------------------------------
// Oracle: atom tensor lossy bosonic modes, exact Lindblad equation.

struct OracleMode {
  double omega_m_ev = 0.0;
  double kappa_ev = 0.0;
  double g_ev = 0.0;               // coupling, eV/(e*a0)
  std::string polarizations = "z"; // subset of "xyz"
};

struct OracleModel {
  std::vector<OracleMode> modes;
  int max_photons = 1;  // max total photon number kept in the truncation
};

struct OracleGenerator {
  GeneratorSet gen;  // h_diag + coupling in h_shift + kappa jumps
  int atom_dim = 0;
  int n_configs = 0;
  std::vector<std::vector<int>> configs;  // photon occupation per mode
  int index(int atom, int config) const { return atom * n_configs + config; }
};

OracleGenerator build_oracle(const Basis& basis, const DipoleTable& dip,
                             const OracleModel& model, bool counter_rotating);

// ---------------------------------------------------------------------------
// Subspace restriction (exact symmetry sectors).

struct Subbasis {
  Basis basis;
  DipoleTable dip;
  std::vector<int> full_indices;
};

// Closure of the seed states under the given spherical components.
std::vector<int> reachable_subspace(const Basis& basis, const DipoleTable& dip,
                                    const std::vector<int>& seeds,
                                    const std::vector<int>& deltas);

// Verifies no dipole coupling for the listed components leaks out of `keep`.
void assert_closed(const DipoleTable& dip, const std::vector<int>& keep,
                   const std::vector<int>& deltas);

Subbasis restrict_basis(const Basis& basis, const DipoleTable& dip,
                        const std::vector<int>& keep);

// Projects a generator onto a kept index set; throws if any operator couples
// kept and dropped states.
GeneratorSet restrict_generator(const GeneratorSet& g,
                                const std::vector<int>& keep);

// ---------------------------------------------------------------------------
// Propagation runs and comparisons.

struct TimeGridSpec {
  double t_max_fs = 0.0;
  int samples = 1001;  // output points including t = 0
  std::vector<double> times_fs() const;
  std::vector<double> times_internal() const;
};

enum class PropagationMethod { Auto, Expm, RK };

struct RunResult {
  std::string generator_name;
  std::vector<double> t_fs;
  std::vector<std::string> obs_labels;
  std::vector<std::vector<double>> values;  // [obs][sample]
  const std::vector<double>& series(const std::string& label) const;
};

// Density-matrix propagation of a Lindblad-form generator; observables are
// the diagonal populations of `basis`. Trace drift beyond 1e-6 is an error.
RunResult run_lindblad(const GeneratorSet& g, const Basis& basis,
                       int initial_index, const TimeGridSpec& grid,
                       PropagationMethod method = PropagationMethod::Auto,
                       const RKOptions& opt = {},
                       const std::string& name = "lindblad",
                       std::vector<CMat>* snapshots = nullptr);

// Bloch-Redfield propagation from the materialized tuple superoperator.
RunResult run_br(const BRTensor& t, const Basis& basis, int initial_index,
                 const TimeGridSpec& grid,
                 PropagationMethod method = PropagationMethod::Auto,
                 const RKOptions& opt = {},
                 std::vector<CMat>* snapshots = nullptr);

// Non-Hermitian Schroedinger propagation on an eigenanalyzed block. Emitted
// observables cover all level-n states of `basis`; states outside the block
// are exactly zero.
RunResult run_effective(const EffectiveBlock& block, const Basis& basis,
                        int initial_index, const TimeGridSpec& grid);

// Oracle propagation; observables are atom populations (photons traced out).
RunResult run_oracle(const OracleGenerator& oracle, const Basis& basis,
                     int initial_atom_index, const TimeGridSpec& grid,
                     PropagationMethod method = PropagationMethod::Auto,
                     const RKOptions& opt = {},
                     std::vector<CMat>* snapshots = nullptr);

struct DeviationReport {
  std::vector<std::string> labels;
  std::vector<double> max_dev;
  std::vector<double> rms_dev;
  double overall_max = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

// Per-observable max/RMS absolute deviation over a shared grid.
DeviationReport compare_runs(const RunResult& a, const RunResult& b,
                             const std::vector<std::string>& subset,
                             double tolerance);

}  // namespace vacmix

#endif
