#include <doctest.h>

#include <cmath>
#include <random>

#include "vacmix/effective.hpp"

using namespace vacmix;

namespace {

SpectralModel benchmark_lorentzian() {
  return SpectralModel::lorentzian_axial(4.024922359499622e-4, 2e-3, 1.95);
}

}  // namespace

TEST_CASE("projection with a silent bath is the bare spectrum") {
  const Basis basis = enumerate_basis(3);
  const DipoleTable dip = build_dipole_table(basis);
  const GeneratorSet g = geometric_mean_lindblad(basis, dip, SpectralModel::flat(0.0), true);
  const CMat h = project_effective(g, basis, 3);
  const auto idx = basis.level_indices(3);
  CHECK(h.rows() == 18);
  for (int i = 0; i < h.rows(); ++i)
    for (int j = 0; j < h.cols(); ++j) {
      if (i == j)
        CHECK(h(i, i) == cplx(basis.states[idx[i]].energy, 0.0));
      else
        CHECK(h(i, j) == cplx(0.0, 0.0));
    }
  auto blocks = block_decompose(h, basis, 3);
  for (auto& b : blocks) {
    eigenanalyze(b);
    for (double r : b.decay_rates()) CHECK(r == 0.0);
  }
  // generator preconditions
  GeneratorSet full = full_secularize(basis, dip, SpectralModel::flat(0.0), true);
  CHECK_THROWS_AS(project_effective(full, basis, 3), std::invalid_argument);
  CHECK_THROWS_AS(project_effective(g, basis, 9), std::invalid_argument);
}

TEST_CASE("block decomposition of the n=3 level") {
  const Basis basis = enumerate_basis(4);
  const DipoleTable dip = build_dipole_table(basis);
  const GeneratorSet g = geometric_mean_lindblad(basis, dip, benchmark_lorentzian(), true);
  const CMat h = project_effective(g, basis, 3);
  const auto blocks = block_decompose(h, basis, 3);
  int total = 0;
  for (const auto& b : blocks) total += b.dim();
  CHECK(total == 18);
  // (m_j = 1/2, even) has 3s, 3d3/2, 3d5/2; odd has the two 3p states
  const auto find_block = [&](int tmj, int parity) -> const EffectiveBlock& {
    for (const auto& b : blocks)
      if (b.twice_mj == tmj && b.l_parity == parity) return b;
    throw std::runtime_error("block not found");
  };
  CHECK(find_block(1, 0).dim() == 3);
  CHECK(find_block(1, 1).dim() == 2);
  CHECK(find_block(3, 0).dim() == 2);
  CHECK(find_block(3, 1).dim() == 1);
  CHECK(find_block(5, 0).dim() == 1);
  // +m and -m blocks are the same matrix up to the Condon-Shortley sign
  // gauge: identical entry magnitudes and identical spectra
  for (int parity : {0, 1}) {
    EffectiveBlock plus = find_block(1, parity);
    EffectiveBlock minus = find_block(-1, parity);
    for (int i = 0; i < plus.dim(); ++i)
      for (int j = 0; j < plus.dim(); ++j)
        CHECK(std::abs(plus.h_eff(i, j)) ==
              doctest::Approx(std::abs(minus.h_eff(i, j))).epsilon(1e-12));
    eigenanalyze(plus);
    eigenanalyze(minus);
    for (int k = 0; k < plus.dim(); ++k)
      CHECK(std::abs(plus.eigenvalues[k] - minus.eigenvalues[k]) <=
            1e-12 * std::max(1e-300, std::abs(plus.eigenvalues[k])));
  }
  // anti-Hermitian part is negative semidefinite: rates are non-negative
  for (auto b : blocks) {
    eigenanalyze(b);
    double scale = 0.0;
    for (const auto& ev : b.eigenvalues) scale = std::max(scale, std::abs(ev));
    for (double r : b.decay_rates()) CHECK(r >= -1e-12 * scale);
  }
}

TEST_CASE("level-7 block dimensions") {
  const Basis basis = enumerate_basis(7);
  const DipoleTable dip = build_dipole_table(basis);
  const GeneratorSet g = geometric_mean_lindblad(basis, dip, SpectralModel::flat(0.0), true);
  const CMat h = project_effective(g, basis, 7);
  const auto blocks = block_decompose(h, basis, 7);
  for (const auto& b : blocks) {
    // stretched m_j: a single l = 6, j = 13/2 state
    if (b.twice_mj == 13) {
      CHECK(b.dim() == 1);
      CHECK(b.labels[0].l == 6);
      CHECK(b.labels[0].twice_j == 13);
    }
    // the m_j = 1/2 subspace splits into 7 even and 6 odd states
    if (b.twice_mj == 1) CHECK(b.dim() == (b.l_parity == 0 ? 7 : 6));
  }
}

TEST_CASE("hermitian-only diagonalization matches when the decay is off") {
  // support away from every transition frequency: lambda reaches it through
  // the principal value, gamma does not
  const Basis basis = enumerate_basis(2);
  const DipoleTable dip = build_dipole_table(basis);
  std::vector<double> w, jx, jz;
  for (double x = 0.05; x <= 0.2; x += 0.005) {
    w.push_back(x);
    jx.push_back(1e-6);
    jz.push_back(1e-6);
  }
  const SpectralModel model = SpectralModel::tabulated(w, jx, jz);
  const GeneratorSet g = geometric_mean_lindblad(basis, dip, model, true);
  const CMat h = project_effective(g, basis, 2);
  CHECK((h - h.adjoint()).max_abs() <= 1e-14);
  auto blocks = block_decompose(h, basis, 2);
  for (auto& b : blocks) {
    eigenanalyze(b);
    for (double r : b.decay_rates()) CHECK(std::abs(r) <= 1e-16);
  }
}

TEST_CASE("participation ratio") {
  std::vector<cplx> basis_state = {1.0, 0.0, 0.0};
  CHECK(participation_ratio(basis_state) == doctest::Approx(1.0).epsilon(1e-14));
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> uni(0.0, 2.0 * 3.14159265358979);
  for (int n : {2, 3, 5, 7}) {
    std::vector<cplx> eq(7, 0.0);
    for (int i = 0; i < n; ++i) eq[i] = std::polar(1.0 / std::sqrt(double(n)), uni(rng));
    CHECK(participation_ratio(eq) == doctest::Approx(n).epsilon(1e-13));
  }
  std::vector<cplx> unnormalized = {0.5, 0.5};
  CHECK_THROWS_AS(participation_ratio(unnormalized), std::invalid_argument);
}

TEST_CASE("dark state certificate") {
  // alpha = 0, z-coupling, intermediates restricted to n = 2: three even
  // states of n = 3 couple to the two 2p targets -> one protected state
  const Basis basis = enumerate_basis(3, 0.0);
  const DipoleTable dip = build_dipole_table(basis);
  const double w32 =
      hartree_to_ev(fine_structure_energy(3, 1, 0.0) - fine_structure_energy(2, 1, 0.0));
  const SpectralModel model = SpectralModel::lorentzian_axial(1e-4, 2e-3, 0.97 * w32);
  const GeneratorSet g = geometric_mean_lindblad(basis, dip, model, true, {2});
  const CMat h = project_effective(g, basis, 3);
  const auto blocks = block_decompose(h, basis, 3);
  // Rayleigh quotient evaluated as sum_j ||Sigma_j psi||^2, which keeps the
  // near-null cancellation exact
  const auto rayleigh = [&](const EffectiveBlock& b, const std::vector<cplx>& v) {
    double q = 0.0, norm = 0.0;
    for (const auto& j : g.jumps) {
      if (j.level != b.n) continue;
      for (int x = 0; x < j.op.rows(); ++x) {
        cplx amp = 0.0;
        for (int k = 0; k < b.dim(); ++k)
          amp += j.op(x, b.basis_indices[k]) * v[k];
        q += std::norm(amp);
      }
      for (int x = 0; x < b.dim(); ++x)
        norm = std::max(norm, std::abs(j.opdag_op(b.basis_indices[x],
                                                  b.basis_indices[x])));
    }
    return std::make_pair(q, norm);
  };
  for (const auto& b : blocks) {
    if (b.twice_mj != 1) continue;
    const auto cert = dark_state_certificate(b, g);
    if (b.l_parity == 0) {
      REQUIRE(b.dim() == 3);
      REQUIRE(cert.has_value());
      const auto [q, norm] = rayleigh(b, *cert);
      CHECK(q <= 1e-20 * norm * b.dim());
    } else {
      // two 3p states decay into s targets through a single angular channel
      // (only their m_l = 0 components couple): one protected combination
      // survives here as well
      REQUIRE(b.dim() == 2);
      REQUIRE(cert.has_value());
      const auto [q, norm] = rayleigh(b, *cert);
      CHECK(q <= 1e-20 * norm * b.dim());
    }
  }

  // isotropic coupling floods the even block with x/y/z channels into all
  // 2p sublevels: the stacked map has full rank and no certificate exists
  const SpectralModel iso = SpectralModel::lorentzian_isotropic(1e-4, 2e-3, 0.97 * w32);
  const GeneratorSet giso = geometric_mean_lindblad(basis, dip, iso, true, {2});
  const CMat hiso = project_effective(giso, basis, 3);
  const auto blocks_iso = block_decompose(hiso, basis, 3);
  for (const auto& b : blocks_iso)
    if (b.twice_mj == 1 && b.l_parity == 0)
      CHECK(!dark_state_certificate(b, giso).has_value());
}

TEST_CASE("perturbative consistency in the coupling strength") {
  const Basis basis = enumerate_basis(3);
  const DipoleTable dip = build_dipole_table(basis);
  const double g0 = 4.024922359499622e-4;
  const auto offdiag_scale = [&](double s) {
    const SpectralModel m =
        SpectralModel::lorentzian_axial(g0 * std::sqrt(s), 2e-3, 1.95);
    const GeneratorSet g = geometric_mean_lindblad(basis, dip, m, true);
    const CMat h = project_effective(g, basis, 3);
    double off = 0.0;
    for (int i = 0; i < h.rows(); ++i)
      for (int j = 0; j < h.cols(); ++j)
        if (i != j) off = std::max(off, std::abs(h(i, j)));
    return off;
  };
  const double o1 = offdiag_scale(1.0);
  const double o2 = offdiag_scale(1e-3);
  CHECK(o2 == doctest::Approx(1e-3 * o1).epsilon(1e-10));

  // eigenvalues approach the bare energies linearly in the scaling
  const SpectralModel tiny = SpectralModel::lorentzian_axial(g0 * 1e-3, 2e-3, 1.95);
  const GeneratorSet gt = geometric_mean_lindblad(basis, dip, tiny, true);
  auto blocks = block_decompose(project_effective(gt, basis, 3), basis, 3);
  for (auto& b : blocks) {
    eigenanalyze(b);
    for (int k = 0; k < b.dim(); ++k) {
      double closest = 1e300;
      for (const auto& q : b.labels)
        closest = std::min(closest, std::abs(b.eigenvalues[k].real() - q.energy));
      CHECK(closest < 1e-9);  // s = 1e-6 on shifts of order 1e-3 fs scale
    }
  }
}

TEST_CASE("refilling-free lindblad equals the effective evolution") {
  const Basis basis = enumerate_basis(3);
  const DipoleTable dip = build_dipole_table(basis);
  const GeneratorSet g = geometric_mean_lindblad(basis, dip, benchmark_lorentzian(), true);
  const CMat h_eff = project_effective(g, basis, 3);
  const auto idx = basis.level_indices(3);
  const int d = static_cast<int>(idx.size());
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  CMat a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = cplx(uni(rng), uni(rng));
  CMat rho_block = matmul(a, a.adjoint());
  rho_block *= 1.0 / rho_block.trace();

  CMat rho_full(g.dim(), g.dim());
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) rho_full(idx[i], idx[j]) = rho_block(i, j);
  const CMat full = lindblad_rhs(g, rho_full, /*include_refilling=*/false);
  CMat projected(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) projected(i, j) = full(idx[i], idx[j]);

  const cplx mi(0.0, -1.0);
  CMat expected = mi * (matmul(h_eff, rho_block) - matmul(rho_block, h_eff.adjoint()));
  // the generator identity holds exactly; numerically the bare Bohr energies
  // (~5e-2 Ha) dominate the rounding, so compare at 1e-12 of that scale
  const double scale = h_eff.max_abs() * std::max(1.0, rho_block.max_abs());
  CHECK((projected - expected).max_abs() <= 1e-12 * scale);
}

TEST_CASE("eigenstate tracking") {
  // synthetic avoided crossing: two nearly-degenerate states swap character
  CMat prev(2, 2), cur(2, 2);
  prev(0, 0) = 1.0; prev(1, 0) = 0.0;   // state A
  prev(0, 1) = 0.0; prev(1, 1) = 1.0;   // state B
  const double c = std::sqrt(0.9), s = std::sqrt(0.1);
  // after the crossing the energy-ordered states exchanged their character
  cur(0, 0) = s; cur(1, 0) = c;
  cur(0, 1) = c; cur(1, 1) = -s;
  const auto [assign, tie] = track_assignment(prev, cur);
  CHECK(!tie);
  CHECK(assign[0] == 1);  // A follows its overlap, not the energy order
  CHECK(assign[1] == 0);

  // genuinely ambiguous overlaps fall back to energy order and are flagged
  CMat amb(2, 2);
  const double r = 1.0 / std::sqrt(2.0);
  amb(0, 0) = r; amb(1, 0) = r;
  amb(0, 1) = r; amb(1, 1) = -r;
  const auto [assign2, tie2] = track_assignment(prev, amb);
  CHECK(tie2);
  CHECK(assign2[0] == 0);
  CHECK(assign2[1] == 1);
}

TEST_CASE("constant sweep produces constant tracked curves") {
  const Basis basis = enumerate_basis(3);
  const DipoleTable dip = build_dipole_table(basis);
  const std::vector<SpectralModel> models(3, benchmark_lorentzian());
  const SweepTable t = sweep_and_track(models, basis, dip, 3, 1, 0, true);
  REQUIRE(t.points.size() == 3);
  CHECK(t.tracked_states == 3);
  for (size_t p = 1; p < t.points.size(); ++p) {
    CHECK(!t.points[p].tie_broken);
    for (int k = 0; k < t.tracked_states; ++k) {
      CHECK(t.points[p].energies[k] ==
            doctest::Approx(t.points[0].energies[k]).epsilon(1e-14));
      CHECK(t.points[p].rates[k] ==
            doctest::Approx(t.points[0].rates[k]).epsilon(1e-12));
      CHECK(t.points[p].participation[k] ==
            doctest::Approx(t.points[0].participation[k]).epsilon(1e-12));
    }
    // averaged participation equals the mean of the per-state values
    double mean = 0.0;
    for (double v : t.points[p].participation) mean += v;
    mean /= t.tracked_states;
    CHECK(t.points[p].participation_avg == doctest::Approx(mean).epsilon(1e-14));
  }
}
