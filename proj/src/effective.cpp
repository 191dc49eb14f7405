#include "vacmix/effective.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "vacmix/parallel.hpp"

namespace vacmix {

std::vector<double> EffectiveBlock::energies() const {
  std::vector<double> e(eigenvalues.size());
  for (size_t i = 0; i < eigenvalues.size(); ++i) e[i] = eigenvalues[i].real();
  return e;
}

std::vector<double> EffectiveBlock::decay_rates() const {
  std::vector<double> r(eigenvalues.size());
  for (size_t i = 0; i < eigenvalues.size(); ++i)
    r[i] = -2.0 * eigenvalues[i].imag();
  return r;
}

CMat project_effective(const GeneratorSet& g, const Basis& basis, int n) {
  if (g.sec != SecMode::PartialGeometricMean)
    throw std::invalid_argument(
        "project_effective: requires a partially secularized geometric-mean "
        "generator");
  const std::vector<int> idx = basis.level_indices(n);
  if (idx.empty())
    throw std::invalid_argument("project_effective: level absent from basis");
  const int d = static_cast<int>(idx.size());
  CMat h(d, d);
  for (int i = 0; i < d; ++i) {
    h(i, i) = g.h_diag[idx[i]];
    for (int j = 0; j < d; ++j) h(i, j) += g.h_shift(idx[i], idx[j]);
  }
  const cplx mihalf(0.0, -0.5);
  for (const auto& jop : g.jumps) {
    if (jop.level != n) continue;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        h(i, j) += mihalf * jop.opdag_op(idx[i], idx[j]);
  }
  return h;
}

std::vector<EffectiveBlock> block_decompose(const CMat& h_level,
                                            const Basis& basis, int n) {
  const std::vector<int> idx = basis.level_indices(n);
  if (static_cast<int>(idx.size()) != h_level.rows())
    throw std::invalid_argument("block_decompose: level dimension mismatch");
  // group by (m_j, l parity)
  std::vector<std::pair<int, int>> keys;
  for (int i : idx)
    keys.emplace_back(basis.states[i].twice_mj, basis.states[i].l % 2);
  std::vector<std::pair<int, int>> uniq = keys;
  std::sort(uniq.begin(), uniq.end());
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());

  // cross-block couplings must vanish
  for (size_t i = 0; i < keys.size(); ++i)
    for (size_t j = 0; j < keys.size(); ++j)
      if (keys[i] != keys[j] && std::abs(h_level(i, j)) > 1e-14)
        throw std::runtime_error(
            "block_decompose: nonzero coupling across (m_j, parity) blocks");

  std::vector<EffectiveBlock> blocks;
  for (const auto& key : uniq) {
    EffectiveBlock b;
    b.n = n;
    b.twice_mj = key.first;
    b.l_parity = key.second;
    std::vector<int> local;
    for (size_t i = 0; i < keys.size(); ++i)
      if (keys[i] == key) local.push_back(static_cast<int>(i));
    b.basis_indices.reserve(local.size());
    for (int li : local) {
      b.basis_indices.push_back(idx[li]);
      b.labels.push_back(basis.states[idx[li]]);
    }
    const int d = static_cast<int>(local.size());
    b.h_eff = CMat(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) b.h_eff(i, j) = h_level(local[i], local[j]);
    blocks.push_back(std::move(b));
  }
  return blocks;
}

void eigenanalyze(EffectiveBlock& block) {
  EigResult r = eig(block.h_eff);
  block.eigenvalues = std::move(r.values);
  block.eigenvectors = std::move(r.vectors);
  block.defective = r.defective_flag;
  block.vector_condition = r.vector_condition;
}

double participation_ratio(const std::vector<cplx>& psi) {
  double n2 = 0.0, n4 = 0.0;
  for (const cplx& c : psi) {
    const double p = std::norm(c);
    n2 += p;
    n4 += p * p;
  }
  if (std::abs(n2 - 1.0) > 1e-8)
    throw std::invalid_argument("participation_ratio: vector is not normalized");
  return 1.0 / n4;
}

std::optional<std::vector<cplx>> dark_state_certificate(
    const EffectiveBlock& block, const GeneratorSet& g) {
  const int d = block.dim();
  // stack the rows of every decay operator out of this level over the block
  std::vector<std::vector<double>> rows;
  for (const auto& jop : g.jumps) {
    if (jop.level != block.n) continue;
    for (int x = 0; x < jop.op.rows(); ++x) {
      std::vector<double> row(d);
      bool any = false;
      for (int k = 0; k < d; ++k) {
        row[k] = jop.op(x, block.basis_indices[k]).real();
        if (row[k] != 0.0) any = true;
      }
      if (any) rows.push_back(std::move(row));
    }
  }
  if (rows.empty()) {
    // no coupling at all: every state is dark; return the first basis vector
    std::vector<cplx> v(d, 0.0);
    if (d == 0) return std::nullopt;
    v[0] = 1.0;
    return v;
  }
  const auto null = real_nullspace(rows);
  if (null.empty()) return std::nullopt;
  std::vector<cplx> v(d);
  for (int k = 0; k < d; ++k) v[k] = null.front()[k];
  return v;
}

std::pair<std::vector<int>, bool> track_assignment(const CMat& prev,
                                                   const CMat& cur) {
  const int d = prev.cols();
  std::vector<int> assign(d, -1);
  std::vector<std::vector<double>> ov(d, std::vector<double>(d, 0.0));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      cplx s = 0.0;
      for (int r = 0; r < d; ++r) s += std::conj(prev(r, i)) * cur(r, j);
      ov[i][j] = std::norm(s);
    }
  std::vector<bool> used_i(d, false), used_j(d, false);
  bool tie = false;
  for (int step = 0; step < d; ++step) {
    // global best among unassigned pairs
    double best = -1.0;
    int bi = -1;
    for (int i = 0; i < d; ++i) {
      if (used_i[i]) continue;
      for (int j = 0; j < d; ++j) {
        if (used_j[j]) continue;
        if (ov[i][j] > best) {
          best = ov[i][j];
          bi = i;
        }
      }
    }
    // within the winning row, candidates within 1e-6 of the best are tied;
    // energy order (lowest column index) breaks the tie
    int bj = -1;
    for (int j = 0; j < d; ++j) {
      if (used_j[j]) continue;
      if (ov[bi][j] > best - 1e-6) {
        if (bj >= 0) tie = true;
        if (bj < 0) bj = j;
      }
    }
    assign[bi] = bj;
    used_i[bi] = true;
    used_j[bj] = true;
  }
  return {assign, tie};
}

SweepTable sweep_and_track(const std::vector<SpectralModel>& models,
                           const Basis& basis, const DipoleTable& dip, int n,
                           int twice_mj, int l_parity, bool counter_rotating,
                           const std::vector<int>& intermediate_levels,
                           int threads) {
  const int npts = static_cast<int>(models.size());
  if (npts == 0) throw std::invalid_argument("sweep_and_track: no sweep points");

  std::vector<EffectiveBlock> blocks(npts);
  parallel_for(npts, [&](long p) {
    GeneratorSet g = geometric_mean_lindblad(basis, dip, models[p],
                                             counter_rotating,
                                             intermediate_levels);
    const CMat h = project_effective(g, basis, n);
    auto decomposed = block_decompose(h, basis, n);
    auto it = std::find_if(decomposed.begin(), decomposed.end(),
                           [&](const EffectiveBlock& b) {
                             return b.twice_mj == twice_mj &&
                                    b.l_parity == l_parity;
                           });
    if (it == decomposed.end())
      throw std::invalid_argument("sweep_and_track: requested block not found");
    eigenanalyze(*it);
    blocks[p] = std::move(*it);
  }, threads);

  const int d = blocks[0].dim();
  SweepTable table;
  table.labels = blocks[0].labels;
  table.tracked_states = d;

  CMat prev_vectors;
  for (int p = 0; p < npts; ++p) {
    EffectiveBlock& b = blocks[p];
    std::vector<int> assign(d);
    bool tie = false;
    if (p == 0) {
      std::iota(assign.begin(), assign.end(), 0);
    } else {
      std::tie(assign, tie) = track_assignment(prev_vectors, b.eigenvectors);
    }

    SweepPoint pt;
    pt.tie_broken = tie;
    pt.energies.resize(d);
    pt.rates.resize(d);
    pt.participation.resize(d);
    CMat tracked_vectors(d, d);
    const auto en = b.energies();
    const auto rt = b.decay_rates();
    for (int i = 0; i < d; ++i) {
      const int j = assign[i];
      pt.energies[i] = en[j];
      pt.rates[i] = rt[j];
      std::vector<cplx> v(d);
      for (int r = 0; r < d; ++r) {
        v[r] = b.eigenvectors(r, j);
        tracked_vectors(r, i) = v[r];
      }
      pt.participation[i] = participation_ratio(v);
    }
    pt.participation_avg =
        std::accumulate(pt.participation.begin(), pt.participation.end(), 0.0) / d;
    const double mean =
        std::accumulate(pt.energies.begin(), pt.energies.end(), 0.0) / d;
    pt.energies_centered.resize(d);
    for (int i = 0; i < d; ++i) pt.energies_centered[i] = pt.energies[i] - mean;

    // diagonal-only (fully secularized) reference
    pt.ref_energies.resize(d);
    pt.ref_rates.resize(d);
    for (int i = 0; i < d; ++i) {
      pt.ref_energies[i] = b.h_eff(i, i).real();
      pt.ref_rates[i] = -2.0 * b.h_eff(i, i).imag();
    }
    const double rmean =
        std::accumulate(pt.ref_energies.begin(), pt.ref_energies.end(), 0.0) / d;
    pt.ref_energies_centered.resize(d);
    for (int i = 0; i < d; ++i)
      pt.ref_energies_centered[i] = pt.ref_energies[i] - rmean;

    prev_vectors = std::move(tracked_vectors);
    table.points.push_back(std::move(pt));
  }
  return table;
}

}  // namespace vacmix
