#include <doctest.h>

#include <cmath>
#include <random>

#include "vacmix/dynamics.hpp"

using namespace vacmix;

namespace {

SpectralModel benchmark_lorentzian() {
  return SpectralModel::lorentzian_axial(4.024922359499622e-4, 2e-3, 1.95);
}

}  // namespace

TEST_CASE("rk integrator against a closed-form oscillator") {
  const cplx mi(0.0, -1.0);
  const auto rhs = [&](const std::vector<cplx>& y, std::vector<cplx>& dy) {
    dy[0] = mi * 3.0 * y[0];
  };
  std::vector<double> grid;
  for (int i = 0; i <= 50; ++i) grid.push_back(i * 0.5);
  std::vector<cplx> last;
  propagate_rk(rhs, {cplx(1.0, 0.0)}, grid, {1e-10, 1e-14},
               [&](int, const std::vector<cplx>& y) { last = y; });
  const cplx expected = std::exp(mi * 3.0 * grid.back());
  CHECK(std::abs(last[0] - expected) < 1e-7);

  // halving the tolerance moves the answer by far less than 1e-6
  std::vector<cplx> tighter;
  propagate_rk(rhs, {cplx(1.0, 0.0)}, grid, {5e-11, 1e-14},
               [&](int, const std::vector<cplx>& y) { tighter = y; });
  CHECK(std::abs(last[0] - tighter[0]) < 1e-6);
}

TEST_CASE("superop stepping matches rk on a small lindblad system") {
  const Basis basis = enumerate_basis(2);
  const DipoleTable dip = build_dipole_table(basis);
  const GeneratorSet g = geometric_mean_lindblad(basis, dip, benchmark_lorentzian(), true);
  const int init = basis.find(2, 1, 3, 1);
  REQUIRE(init >= 0);
  const TimeGridSpec grid{2000.0, 21};
  const RunResult a = run_lindblad(g, basis, init, grid, PropagationMethod::Expm);
  const RunResult b = run_lindblad(g, basis, init, grid, PropagationMethod::RK,
                                   {1e-10, 1e-14});
  double worst = 0.0;
  for (size_t o = 0; o < a.values.size(); ++o)
    for (size_t s = 0; s < a.values[o].size(); ++s)
      worst = std::max(worst, std::abs(a.values[o][s] - b.values[o][s]));
  CHECK(worst < 1e-8);
}

TEST_CASE("reachable subspace and closure") {
  const Basis basis = enumerate_basis(4);
  const DipoleTable dip = build_dipole_table(basis);
  const int init = basis.find(3, 0, 1, 1);
  REQUIRE(init >= 0);
  const auto keep = reachable_subspace(basis, dip, {init}, {0});
  CHECK(keep.size() == 16);  // all m_j = +1/2 states with n <= 4
  for (int k : keep) CHECK(basis.states[k].twice_mj == 1);
  CHECK_NOTHROW(assert_closed(dip, keep, {0}));
  CHECK_THROWS(assert_closed(dip, keep, {+1, -1}));

  // restriction of an axial generator is exact; an isotropic bath couples out
  const GeneratorSet axial = geometric_mean_lindblad(basis, dip, benchmark_lorentzian(), true);
  CHECK_NOTHROW(restrict_generator(axial, keep));
  const SpectralModel iso =
      SpectralModel::lorentzian_isotropic(4.024922359499622e-4, 2e-3, 1.95);
  const GeneratorSet giso = geometric_mean_lindblad(basis, dip, iso, true);
  CHECK_THROWS(restrict_generator(giso, keep));
}

TEST_CASE("oracle construction basics") {
  const Basis basis = enumerate_basis(2);
  const DipoleTable dip = build_dipole_table(basis);

  // no modes: bare atomic evolution, populations constant
  OracleModel empty;
  empty.max_photons = 1;
  const OracleGenerator o0 = build_oracle(basis, dip, empty, true);
  CHECK(o0.gen.dim() == basis.size());
  const TimeGridSpec grid{1000.0, 11};
  const RunResult r0 = run_oracle(o0, basis, 1, grid, PropagationMethod::Expm);
  for (const auto& series : r0.values)
    for (double v : series) CHECK(v == doctest::Approx(series.front()).epsilon(1e-12));

  // g = 0 mode: still constant
  OracleModel quiet;
  quiet.modes.push_back({10.2, 2e-3, 0.0, "z"});
  quiet.max_photons = 1;
  const OracleGenerator oq = build_oracle(basis, dip, quiet, true);
  const RunResult rq = run_oracle(oq, basis, 1, grid, PropagationMethod::Expm);
  for (const auto& series : rq.values)
    for (double v : series) CHECK(v == doctest::Approx(series.front()).epsilon(1e-10));

  // coupling Hamiltonian is Hermitian, and the RWA drops the counter-rotating
  // part
  OracleModel m;
  m.modes.push_back({10.0, 2e-3, 1e-3, "z"});
  m.max_photons = 2;
  const OracleGenerator full = build_oracle(basis, dip, m, true);
  CHECK((full.gen.h_shift - full.gen.h_shift.adjoint()).max_abs() <=
        1e-14 * std::max(full.gen.h_shift.max_abs(), 1e-300));
  const OracleGenerator rwa = build_oracle(basis, dip, m, false);
  CHECK((full.gen.h_shift - rwa.gen.h_shift).max_abs() > 0.0);
  CHECK((rwa.gen.h_shift - rwa.gen.h_shift.adjoint()).max_abs() <=
        1e-14 * std::max(rwa.gen.h_shift.max_abs(), 1e-300));
  CHECK(full.n_configs == 3);

  CHECK_THROWS_AS(build_oracle(basis, dip, OracleModel{{{1.0, 1.0, 1.0, "z"}}, 0}, true),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_oracle(basis, dip, OracleModel{{{1.0, 1.0, 1.0, "q"}}, 1}, true),
                  std::invalid_argument);
}

TEST_CASE("effective run: norm decay and zero-duration window") {
  const Basis basis = enumerate_basis(3);
  const DipoleTable dip = build_dipole_table(basis);
  const GeneratorSet g = geometric_mean_lindblad(basis, dip, benchmark_lorentzian(), true);
  auto blocks = block_decompose(project_effective(g, basis, 3), basis, 3);
  const int init = basis.find(3, 0, 1, 1);
  auto it = std::find_if(blocks.begin(), blocks.end(), [&](const EffectiveBlock& b) {
    return std::find(b.basis_indices.begin(), b.basis_indices.end(), init) !=
           b.basis_indices.end();
  });
  REQUIRE(it != blocks.end());
  eigenanalyze(*it);

  const TimeGridSpec grid{5e5, 101};
  const RunResult r = run_effective(*it, basis, init, grid);
  // norm = total level population is non-increasing under the non-Hermitian
  // evolution
  std::vector<double> norm(grid.samples, 0.0);
  for (const auto& series : r.values)
    for (int s = 0; s < grid.samples; ++s) norm[s] += series[s];
  for (int s = 1; s < grid.samples; ++s) CHECK(norm[s] <= norm[s - 1] + 1e-12);
  CHECK(norm[0] == doctest::Approx(1.0).epsilon(1e-12));

  // zero-duration window: a single row holding the initial populations
  const TimeGridSpec zero{0.0, 1};
  const RunResult rz = run_effective(*it, basis, init, zero);
  CHECK(rz.t_fs.size() == 1);
  for (size_t o = 0; o < rz.obs_labels.size(); ++o)
    CHECK(rz.values[o][0] ==
          doctest::Approx(rz.obs_labels[o] == basis.states[init].label() ? 1.0 : 0.0)
              .epsilon(1e-14));
}

TEST_CASE("compare_runs") {
  const Basis basis = enumerate_basis(2);
  const DipoleTable dip = build_dipole_table(basis);
  const GeneratorSet g = geometric_mean_lindblad(basis, dip, benchmark_lorentzian(), true);
  const TimeGridSpec grid{1000.0, 5};
  const RunResult a = run_lindblad(g, basis, 1, grid, PropagationMethod::Expm);
  const DeviationReport self = compare_runs(a, a, {}, 1e-15);
  CHECK(self.overall_max == 0.0);
  CHECK(self.pass);

  RunResult b = a;
  b.t_fs.pop_back();
  for (auto& v : b.values) v.pop_back();
  CHECK_THROWS_AS(compare_runs(a, b, {}, 1.0), std::invalid_argument);
}
