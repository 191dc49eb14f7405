#include "vacmix/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "vacmix/constants.hpp"

namespace vacmix {

namespace {
const cplx kI(0.0, 1.0);
}

// ---------------------------------------------------------------------------
// Dormand-Prince 5(4), FSAL.

void propagate_rk(
    const std::function<void(const std::vector<cplx>&, std::vector<cplx>&)>& rhs,
    const std::vector<cplx>& y0, const std::vector<double>& t_grid,
    const RKOptions& opt,
    const std::function<void(int, const std::vector<cplx>&)>& on_sample) {
  // autonomous right-hand sides only: the stage nodes are not needed
  static const double a21 = 1.0 / 5;
  static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                      a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                      a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                      a65 = -5103.0 / 18656;
  static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                      b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                      e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  if (t_grid.empty() || t_grid.front() != 0.0)
    throw std::invalid_argument("propagate_rk: grid must start at 0");
  const size_t n = y0.size();
  std::vector<cplx> y = y0, k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n),
                    ytmp(n), ynew(n);
  on_sample(0, y);
  if (t_grid.size() == 1) return;

  double t = 0.0;
  const double t_end = t_grid.back();
  double h = (t_grid[1] - t_grid[0]) / 16.0;
  rhs(y, k1);
  size_t next_sample = 1;
  long nsteps = 0;
  while (t < t_end) {
    if (++nsteps > 100000000L)
      throw std::runtime_error("propagate_rk: step budget exhausted");
    bool hit_sample = false;
    double target = t_grid[next_sample];
    if (t + h >= target - 1e-14 * t_end) {
      h = target - t;
      hit_sample = true;
    }
    const auto stage = [&](std::vector<cplx>& out, auto... pairs) {
      // out = y + h * sum(coef * k)
      std::copy(y.begin(), y.end(), out.begin());
      const auto add = [&](double coef, const std::vector<cplx>& k) {
        if (coef == 0.0) return;
        const cplx a(h * coef, 0.0);
        for (size_t i = 0; i < n; ++i) out[i] += a * k[i];
      };
      (add(pairs.first, *pairs.second), ...);
    };
    using P = std::pair<double, const std::vector<cplx>*>;
    stage(ytmp, P{a21, &k1});
    rhs(ytmp, k2);
    stage(ytmp, P{a31, &k1}, P{a32, &k2});
    rhs(ytmp, k3);
    stage(ytmp, P{a41, &k1}, P{a42, &k2}, P{a43, &k3});
    rhs(ytmp, k4);
    stage(ytmp, P{a51, &k1}, P{a52, &k2}, P{a53, &k3}, P{a54, &k4});
    rhs(ytmp, k5);
    stage(ytmp, P{a61, &k1}, P{a62, &k2}, P{a63, &k3}, P{a64, &k4}, P{a65, &k5});
    rhs(ytmp, k6);
    stage(ynew, P{b1, &k1}, P{b3, &k3}, P{b4, &k4}, P{b5, &k5}, P{b6, &k6});
    rhs(ynew, k7);

    double err2 = 0.0;
    for (size_t i = 0; i < n; ++i) {
      const cplx e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                          e6 * k6[i] + e7 * k7[i]);
      const double sc =
          opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      err2 += std::norm(e) / (sc * sc);
    }
    const double err = std::sqrt(err2 / n);
    if (err <= 1.0) {
      t += h;
      std::swap(y, ynew);
      std::swap(k1, k7);  // FSAL
      if (hit_sample) {
        on_sample(static_cast<int>(next_sample), y);
        ++next_sample;
        if (next_sample >= t_grid.size()) break;
      }
    }
    const double fac =
        std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0);
    h *= fac;
    const double hmin = 1e-14 * std::max(t_end, 1.0);
    if (h < hmin)
      throw std::runtime_error(
          "propagate_rk: step size underflow (t=" + std::to_string(t) +
          ", err=" + std::to_string(err) + ")");
  }
}

void propagate_superop(const CMat& superop, const std::vector<cplx>& v0,
                       double dt, int nsteps,
                       const std::function<void(int, const std::vector<cplx>&)>& on_sample) {
  std::vector<cplx> v = v0;
  on_sample(0, v);
  if (nsteps == 0) return;
  CMat l = superop;
  l *= cplx(dt, 0.0);
  const CMat estep = expm(l);
  for (int s = 1; s <= nsteps; ++s) {
    v = matvec(estep, v);
    on_sample(s, v);
  }
}

// ---------------------------------------------------------------------------
// Oracle construction.

namespace {

std::vector<std::vector<int>> photon_configs(int n_modes, int max_total) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(n_modes, 0);
  const std::function<void(int, int)> rec = [&](int mode, int left) {
    if (mode == n_modes) {
      out.push_back(cur);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      cur[mode] = k;
      rec(mode + 1, left - k);
    }
    cur[mode] = 0;
  };
  rec(0, max_total);
  return out;
}

CMat polarization_operator(const DipoleTable& dip, const std::string& pols) {
  const int n = dip.dim;
  CMat op(n, n);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (char p : pols) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double dp = dip.get(+1, i, j);
        const double dm = dip.get(-1, i, j);
        const double dz = dip.get(0, i, j);
        switch (p) {
          case 'z': op(i, j) += dz; break;
          case 'x': op(i, j) += (dm - dp) * inv_sqrt2; break;
          case 'y': op(i, j) += kI * (dp + dm) * inv_sqrt2; break;
          default:
            throw std::invalid_argument("oracle polarizations must be in xyz");
        }
      }
  }
  return op;
}

}  // namespace

OracleGenerator build_oracle(const Basis& basis, const DipoleTable& dip,
                             const OracleModel& model, bool counter_rotating) {
  if (model.max_photons < 1)
    throw std::invalid_argument("oracle truncation must allow at least one photon");
  const int na = basis.size();
  const int nm = static_cast<int>(model.modes.size());
  OracleGenerator o;
  o.atom_dim = na;
  o.configs = photon_configs(nm, model.max_photons);
  o.n_configs = static_cast<int>(o.configs.size());
  const int dim = na * o.n_configs;

  o.gen.sec = SecMode::None;
  o.gen.counter_rotating = counter_rotating;
  o.gen.h_diag.assign(dim, 0.0);
  for (int i = 0; i < na; ++i)
    for (int c = 0; c < o.n_configs; ++c) {
      double e = basis.states[i].energy;
      for (int m = 0; m < nm; ++m)
        e += ev_to_hartree(model.modes[m].omega_m_ev) * o.configs[c][m];
      o.gen.h_diag[o.index(i, c)] = e;
    }
  o.gen.h_shift = CMat(dim, dim);

  // config adjacency per mode: c -> c' with one photon removed
  for (int m = 0; m < nm; ++m) {
    const OracleMode& mode = model.modes[m];
    const double g = ev_to_hartree(mode.g_ev);
    const double kappa = ev_to_hartree(mode.kappa_ev);
    CMat dop = polarization_operator(dip, mode.polarizations);
    CMat a_ph(o.n_configs, o.n_configs);
    for (int c = 0; c < o.n_configs; ++c) {
      if (o.configs[c][m] == 0) continue;
      std::vector<int> lower = o.configs[c];
      lower[m] -= 1;
      const auto it = std::find(o.configs.begin(), o.configs.end(), lower);
      const int cl = static_cast<int>(it - o.configs.begin());
      a_ph(cl, c) = std::sqrt(static_cast<double>(o.configs[c][m]));
    }
    // coupling g * d (a + a^dag); the RWA keeps only the strictly
    // excitation-conserving part (atom lowering with photon creation and
    // vice versa). Degenerate-pair terms oscillate at omega_M and drop out.
    for (int i = 0; i < na; ++i)
      for (int j = 0; j < na; ++j) {
        const cplx dv = dop(i, j);
        if (dv == cplx(0.0, 0.0)) continue;
        const double ei = basis.states[i].energy, ej = basis.states[j].energy;
        for (int c = 0; c < o.n_configs; ++c)
          for (int cp = 0; cp < o.n_configs; ++cp) {
            cplx photon = 0.0;
            if (counter_rotating) {
              photon = a_ph(c, cp) + std::conj(a_ph(cp, c));
            } else if (ei < ej) {
              photon = std::conj(a_ph(cp, c));  // a^dag
            } else if (ei > ej) {
              photon = a_ph(c, cp);  // a
            }
            if (photon == cplx(0.0, 0.0)) continue;
            o.gen.h_shift(o.index(i, c), o.index(j, cp)) += g * dv * photon;
          }
      }
    // dissipator kappa L[a]
    JumpOp jop;
    jop.op = CMat(dim, dim);
    const double root = std::sqrt(kappa);
    for (int i = 0; i < na; ++i)
      for (int c = 0; c < o.n_configs; ++c)
        for (int cp = 0; cp < o.n_configs; ++cp) {
          const cplx av = a_ph(c, cp);
          if (av != cplx(0.0, 0.0))
            jop.op(o.index(i, c), o.index(i, cp)) = root * av;
        }
    jop.opdag_op = matmul(jop.op.adjoint(), jop.op);
    jop.delta = 0;
    jop.level = -1;
    o.gen.jumps.push_back(std::move(jop));
  }
  return o;
}

// ---------------------------------------------------------------------------
// Subspace restriction.

std::vector<int> reachable_subspace(const Basis& basis, const DipoleTable& dip,
                                    const std::vector<int>& seeds,
                                    const std::vector<int>& deltas) {
  const int n = basis.size();
  std::vector<char> in(n, 0);
  std::vector<int> stack = seeds;
  for (int s : seeds) in[s] = 1;
  while (!stack.empty()) {
    const int x = stack.back();
    stack.pop_back();
    for (int d : deltas)
      for (int y = 0; y < n; ++y) {
        if (in[y]) continue;
        if (dip.get(d, x, y) != 0.0 || dip.get(d, y, x) != 0.0) {
          in[y] = 1;
          stack.push_back(y);
        }
      }
  }
  std::vector<int> keep;
  for (int i = 0; i < n; ++i)
    if (in[i]) keep.push_back(i);
  return keep;
}

void assert_closed(const DipoleTable& dip, const std::vector<int>& keep,
                   const std::vector<int>& deltas) {
  std::vector<char> in(dip.dim, 0);
  for (int k : keep) in[k] = 1;
  for (int d : deltas)
    for (int x = 0; x < dip.dim; ++x)
      for (int y = 0; y < dip.dim; ++y)
        if (in[x] != in[y] && dip.get(d, x, y) != 0.0)
          throw std::runtime_error("subspace is not closed under d^delta");
}

Subbasis restrict_basis(const Basis& basis, const DipoleTable& dip,
                        const std::vector<int>& keep) {
  Subbasis s;
  s.basis.n_max = basis.n_max;
  s.basis.alpha = basis.alpha;
  s.full_indices = keep;
  for (int k : keep) s.basis.states.push_back(basis.states[k]);
  const int m = static_cast<int>(keep.size());
  s.dip.dim = m;
  for (auto& c : s.dip.comp) c.assign(static_cast<size_t>(m) * m, 0.0);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int delta : {+1, -1, 0}) {
        const double v = dip.get(delta, keep[a], keep[b]);
        if (v != 0.0) {
          s.dip.comp[DipoleTable::dslot(delta)][static_cast<size_t>(a) * m + b] = v;
          s.dip.entries.push_back({a, b, delta, v});
        }
      }
  return s;
}

GeneratorSet restrict_generator(const GeneratorSet& g,
                                const std::vector<int>& keep) {
  const int n = g.dim();
  const int m = static_cast<int>(keep.size());
  std::vector<char> in(n, 0);
  for (int k : keep) in[k] = 1;
  const auto check_and_cut = [&](const CMat& full) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (in[i] != in[j] && full(i, j) != cplx(0.0, 0.0))
          throw std::runtime_error(
              "restrict_generator: operator couples kept and dropped states");
    CMat cut(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) cut(i, j) = full(keep[i], keep[j]);
    return cut;
  };
  GeneratorSet r;
  r.sec = g.sec;
  r.counter_rotating = g.counter_rotating;
  r.h_diag.resize(m);
  for (int i = 0; i < m; ++i) r.h_diag[i] = g.h_diag[keep[i]];
  r.h_shift = check_and_cut(g.h_shift);
  for (const auto& j : g.jumps) {
    JumpOp jr;
    jr.op = check_and_cut(j.op);
    if (jr.op.max_abs() == 0.0) continue;
    jr.opdag_op = matmul(jr.op.adjoint(), jr.op);
    jr.delta = j.delta;
    jr.level = j.level;
    jr.omega = j.omega;
    r.jumps.push_back(std::move(jr));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Runs.

std::vector<double> TimeGridSpec::times_fs() const {
  if (samples < 1) throw std::invalid_argument("time grid needs >= 1 sample");
  std::vector<double> t(samples);
  if (samples == 1) {
    t[0] = 0.0;
    return t;
  }
  const double dt = t_max_fs / (samples - 1);
  for (int i = 0; i < samples; ++i) t[i] = dt * i;
  return t;
}

std::vector<double> TimeGridSpec::times_internal() const {
  auto t = times_fs();
  for (double& x : t) x = fs_to_atomic(x);
  return t;
}

const std::vector<double>& RunResult::series(const std::string& label) const {
  for (size_t i = 0; i < obs_labels.size(); ++i)
    if (obs_labels[i] == label) return values[i];
  throw std::invalid_argument("RunResult: no observable named " + label);
}

namespace {

// shared implementation: propagate a density matrix under a Lindblad-form
// generator and record diagonal populations (optionally grouped).
RunResult run_density(const GeneratorSet& g, const TimeGridSpec& grid,
                      int init_index, PropagationMethod method,
                      const RKOptions& opt, const std::string& name,
                      const std::vector<std::string>& labels,
                      const std::vector<std::vector<int>>& groups,
                      std::vector<CMat>* snapshots, const CMat* superop_override) {
  const int n = g.dim();
  RunResult res;
  res.generator_name = name;
  res.t_fs = grid.times_fs();
  res.obs_labels = labels;
  res.values.assign(labels.size(), std::vector<double>(grid.samples, 0.0));

  const auto record = [&](int s, const std::vector<cplx>& v) {
    double tr = 0.0;
    for (int i = 0; i < n; ++i) tr += v[static_cast<size_t>(i) * n + i].real();
    if (std::abs(tr - 1.0) > 1e-6)
      throw std::runtime_error(name + ": trace drift " +
                               std::to_string(std::abs(tr - 1.0)));
    for (size_t o = 0; o < groups.size(); ++o) {
      double p = 0.0;
      for (int i : groups[o]) p += v[static_cast<size_t>(i) * n + i].real();
      res.values[o][s] = p;
    }
    if (snapshots) {
      CMat rho(n, n);
      std::copy(v.begin(), v.end(), rho.data());
      snapshots->push_back(std::move(rho));
    }
  };

  std::vector<cplx> v0(static_cast<size_t>(n) * n, 0.0);
  v0[static_cast<size_t>(init_index) * n + init_index] = 1.0;

  const bool use_expm = method == PropagationMethod::Expm ||
                        (method == PropagationMethod::Auto && n <= 50) ||
                        superop_override != nullptr;
  const auto t_int = grid.times_internal();
  if (grid.samples == 1) {
    record(0, v0);
    return res;
  }
  if (use_expm) {
    CMat sup = superop_override ? *superop_override : lindblad_superop(g);
    propagate_superop(sup, v0, t_int[1] - t_int[0], grid.samples - 1, record);
  } else {
    const auto rhs = [&](const std::vector<cplx>& y, std::vector<cplx>& dy) {
      CMat rho(n, n);
      std::copy(y.begin(), y.end(), rho.data());
      CMat d = lindblad_rhs(g, rho);
      std::copy(d.data(), d.data() + static_cast<size_t>(n) * n, dy.begin());
    };
    propagate_rk(rhs, v0, t_int, opt, record);
  }
  return res;
}

}  // namespace

RunResult run_lindblad(const GeneratorSet& g, const Basis& basis,
                       int initial_index, const TimeGridSpec& grid,
                       PropagationMethod method, const RKOptions& opt,
                       const std::string& name, std::vector<CMat>* snapshots) {
  std::vector<std::string> labels;
  std::vector<std::vector<int>> groups;
  for (int i = 0; i < basis.size(); ++i) {
    labels.push_back(basis.states[i].label());
    groups.push_back({i});
  }
  return run_density(g, grid, initial_index, method, opt, name, labels, groups,
                     snapshots, nullptr);
}

RunResult run_br(const BRTensor& t, const Basis& basis, int initial_index,
                 const TimeGridSpec& grid, PropagationMethod method,
                 const RKOptions& opt, std::vector<CMat>* snapshots) {
  std::vector<std::string> labels;
  std::vector<std::vector<int>> groups;
  for (int i = 0; i < basis.size(); ++i) {
    labels.push_back(basis.states[i].label());
    groups.push_back({i});
  }
  GeneratorSet shell;  // only used for dimensions / labels in run_density
  shell.h_diag.assign(basis.size(), 0.0);
  shell.h_shift = CMat(basis.size(), basis.size());
  const CMat sup = br_superop(t, basis);
  if (method == PropagationMethod::RK)
    throw std::invalid_argument("run_br: RK path not supported; use the superoperator");
  return run_density(shell, grid, initial_index, method, opt, "bloch_redfield",
                     labels, groups, snapshots, &sup);
}

RunResult run_effective(const EffectiveBlock& block, const Basis& basis,
                        int initial_index, const TimeGridSpec& grid) {
  const int d = block.dim();
  if (block.eigenvalues.empty())
    throw std::invalid_argument("run_effective: block must be eigenanalyzed");
  int local = -1;
  for (int k = 0; k < d; ++k)
    if (block.basis_indices[k] == initial_index) local = k;
  if (local < 0)
    throw std::invalid_argument("run_effective: initial state not in block");

  // observables: every state of this Bohr level; out-of-block states stay 0
  const auto level_idx = basis.level_indices(block.n);
  RunResult res;
  res.generator_name = "effective";
  res.t_fs = grid.times_fs();
  for (int i : level_idx) res.obs_labels.push_back(basis.states[i].label());
  res.values.assign(res.obs_labels.size(),
                    std::vector<double>(grid.samples, 0.0));
  std::vector<int> block_pos(level_idx.size(), -1);
  for (size_t o = 0; o < level_idx.size(); ++o)
    for (int k = 0; k < d; ++k)
      if (block.basis_indices[k] == level_idx[o]) block_pos[o] = k;

  // psi(t) = V exp(-i lambda t) V^-1 psi0
  CMat rhsv(d, 1);
  for (int k = 0; k < d; ++k) rhsv(k, 0) = (k == local) ? 1.0 : 0.0;
  const LUFactor vf = lu_factor(block.eigenvectors);
  const CMat w = lu_solve(vf, rhsv);
  const auto t_int = grid.times_internal();
  for (int s = 0; s < grid.samples; ++s) {
    std::vector<cplx> psi(d, 0.0);
    for (int k = 0; k < d; ++k) {
      const cplx phase = std::exp(-kI * block.eigenvalues[k] * t_int[s]);
      const cplx coef = phase * w(k, 0);
      if (coef == cplx(0.0, 0.0)) continue;
      for (int r = 0; r < d; ++r) psi[r] += coef * block.eigenvectors(r, k);
    }
    for (size_t o = 0; o < level_idx.size(); ++o)
      if (block_pos[o] >= 0) res.values[o][s] = std::norm(psi[block_pos[o]]);
  }
  return res;
}

RunResult run_oracle(const OracleGenerator& oracle, const Basis& basis,
                     int initial_atom_index, const TimeGridSpec& grid,
                     PropagationMethod method, const RKOptions& opt,
                     std::vector<CMat>* snapshots) {
  std::vector<std::string> labels;
  std::vector<std::vector<int>> groups;
  for (int i = 0; i < oracle.atom_dim; ++i) {
    labels.push_back(basis.states[i].label());
    std::vector<int> idx;
    for (int c = 0; c < oracle.n_configs; ++c) idx.push_back(oracle.index(i, c));
    groups.push_back(std::move(idx));
  }
  // vacuum photon config is configs.front() (all zeros by construction)
  int vac = 0;
  for (int c = 0; c < oracle.n_configs; ++c) {
    bool zero = true;
    for (int k : oracle.configs[c]) zero &= (k == 0);
    if (zero) vac = c;
  }
  return run_density(oracle.gen, grid, oracle.index(initial_atom_index, vac),
                     method, opt, "oracle", labels, groups, snapshots, nullptr);
}

DeviationReport compare_runs(const RunResult& a, const RunResult& b,
                             const std::vector<std::string>& subset,
                             double tolerance) {
  if (a.t_fs.size() != b.t_fs.size())
    throw std::invalid_argument("compare_runs: time grids differ in length");
  for (size_t i = 0; i < a.t_fs.size(); ++i)
    if (std::abs(a.t_fs[i] - b.t_fs[i]) > 1e-9 * std::max(1.0, a.t_fs.back()))
      throw std::invalid_argument("compare_runs: time grids differ");
  std::vector<std::string> labels = subset;
  if (labels.empty()) {
    for (const auto& l : a.obs_labels)
      if (std::find(b.obs_labels.begin(), b.obs_labels.end(), l) !=
          b.obs_labels.end())
        labels.push_back(l);
  }
  DeviationReport rep;
  rep.tolerance = tolerance;
  for (const auto& l : labels) {
    const auto& sa = a.series(l);
    const auto& sb = b.series(l);
    double mx = 0.0, acc = 0.0;
    for (size_t i = 0; i < sa.size(); ++i) {
      const double d = std::abs(sa[i] - sb[i]);
      mx = std::max(mx, d);
      acc += d * d;
    }
    rep.labels.push_back(l);
    rep.max_dev.push_back(mx);
    rep.rms_dev.push_back(std::sqrt(acc / sa.size()));
    rep.overall_max = std::max(rep.overall_max, mx);
  }
  rep.pass = rep.overall_max <= tolerance;
  return rep;
}

}  // namespace vacmix
