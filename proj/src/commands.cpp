#include "vacmix/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <ostream>

#include "vacmix/output.hpp"
#include "vacmix/verify.hpp"

namespace vacmix {

SpectralModel bath_model_from_config(const BathConfig& b) {
  SpectralModel m;
  if (b.variant == "lorentzian_axial") {
    m = SpectralModel::lorentzian_axial(b.g_ev, b.kappa_ev, b.omega_m_ev);
  } else if (b.variant == "lorentzian_isotropic") {
    m = SpectralModel::lorentzian_isotropic(b.g_ev, b.kappa_ev, b.omega_m_ev);
  } else if (b.variant == "tabulated") {
    if (b.file.empty()) throw ConfigError("bath.variant tabulated requires bath.file");
    try {
      m = load_spectral_file(b.file);
    } catch (const std::exception& e) {
      throw ConfigError(e.what());
    }
  } else if (b.variant == "flat") {
    m = SpectralModel::flat(b.flat_j0_ev);
  } else {
    throw ConfigError("unknown bath variant: " + b.variant);
  }
  m.out_of_grid = b.out_of_grid == "error" ? OutOfGrid::Error : OutOfGrid::Zero;
  return m;
}

std::vector<int> deltas_for_polarizations(const std::string& pols) {
  std::vector<int> d;
  const auto add = [&](int x) {
    if (std::find(d.begin(), d.end(), x) == d.end()) d.push_back(x);
  };
  for (char p : pols) {
    if (p == 'z') add(0);
    else if (p == 'x' || p == 'y') { add(+1); add(-1); }
    else throw ConfigError("polarizations must be a subset of xyz");
  }
  if (d.empty()) throw ConfigError("polarizations must not be empty");
  return d;
}

int cmd_spectra(const RunConfig& cfg, std::ostream& log) {
  if (cfg.spectra.points < 1 || cfg.spectra.omega_max_ev <= cfg.spectra.omega_min_ev)
    throw ConfigError("spectra: empty frequency grid");
  const SpectralModel model = bath_model_from_config(cfg.bath);
  const std::string hash = config_hash(cfg);
  CsvTable t;
  t.comments = {"config " + hash, "model " + model.describe(),
                "units: omega eV; gamma, lambda eV/(e*a0)^2"};
  t.columns = {"omega_ev", "gamma_xx", "gamma_zz", "lambda_xx", "lambda_zz"};
  const int np = cfg.spectra.points;
  for (int i = 0; i < np; ++i) {
    const double w_ev =
        cfg.spectra.omega_min_ev +
        (np == 1 ? 0.0
                 : (cfg.spectra.omega_max_ev - cfg.spectra.omega_min_ev) * i /
                       (np - 1));
    const double w = ev_to_hartree(w_ev);
    t.rows.push_back({w_ev,
                      jdensity_internal_to_ev(gamma_kernel(model, +1, w)),
                      jdensity_internal_to_ev(gamma_kernel(model, 0, w)),
                      jdensity_internal_to_ev(lambda_kernel(model, +1, w)),
                      jdensity_internal_to_ev(lambda_kernel(model, 0, w))});
  }
  std::filesystem::create_directories(cfg.output.dir);
  write_csv(cfg.output.dir + "/spectra.csv", t);
  log << "wrote " << cfg.output.dir << "/spectra.csv (" << np << " rows)\n";
  return 0;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& log) {
  if (cfg.bath.sweep_files.empty())
    throw ConfigError("sweep requires bath.sweep_files");
  std::vector<SpectralModel> models;
  for (const auto& f : cfg.bath.sweep_files) {
    if (!std::filesystem::exists(f))
      throw ConfigError("missing spectral file for sweep point: " + f);
    models.push_back(load_spectral_file(f));
  }
  const Basis basis = enumerate_basis(cfg.atom.n_max, cfg.atom.alpha);
  const DipoleTable dip = build_dipole_table(basis);
  const int tmj = static_cast<int>(std::lround(2.0 * cfg.atom.target_mj));
  const int parity = cfg.atom.target_parity == "even" ? 0 : 1;
  SweepTable table = sweep_and_track(models, basis, dip, cfg.atom.target_n,
                                     tmj, parity, cfg.flags.counter_rotating,
                                     cfg.flags.intermediate_levels,
                                     cfg.threads);
  std::vector<double> param(models.size());
  for (size_t i = 0; i < param.size(); ++i) param[i] = static_cast<double>(i);
  write_sweep_table(cfg.output.dir, table, param, config_hash(cfg));
  log << "wrote sweep tables for " << models.size() << " points, "
      << table.tracked_states << " tracked states to " << cfg.output.dir << "\n";
  return 0;
}

namespace {

struct PropagationContext {
  Basis basis;          // possibly restricted
  DipoleTable dip;
  Basis full_basis;
  DipoleTable full_dip;
  std::vector<int> keep;  // indices into the full basis (identity if no cut)
  int init_index = -1;    // in the (restricted) basis
  bool restricted = false;
};

PropagationContext make_context(const RunConfig& cfg, std::ostream& log) {
  PropagationContext ctx;
  ctx.full_basis = enumerate_basis(cfg.atom.n_max, cfg.atom.alpha);
  ctx.full_dip = build_dipole_table(ctx.full_basis);
  const auto& ini = cfg.dynamics.initial;
  const int tj = static_cast<int>(std::lround(2.0 * ini.j));
  const int tmj = static_cast<int>(std::lround(2.0 * ini.mj));
  const int init_full = ctx.full_basis.find(ini.n, ini.l, tj, tmj);
  if (init_full < 0) throw ConfigError("dynamics.initial state not in basis");

  bool restrict_ok = cfg.dynamics.restrict_to_reachable;
  const auto deltas = deltas_for_polarizations(cfg.dynamics.mode.polarizations);
  // the sector reduction is exact only when the bath drives the same
  // components as the oracle mode couplings
  const SpectralModel bath = bath_model_from_config(cfg.bath);
  const bool bath_axial =
      bath.variant == SpectralVariant::LorentzianAxial ||
      (bath.variant == SpectralVariant::TabulatedDiagonal &&
       *std::max_element(bath.jxx.begin(), bath.jxx.end()) == 0.0);
  const bool z_only = deltas.size() == 1 && deltas[0] == 0;
  if (restrict_ok && !(bath_axial && z_only)) {
    log << "note: sector restriction disabled (bath or mode couples x/y)\n";
    restrict_ok = false;
  }
  if (restrict_ok) {
    ctx.keep = reachable_subspace(ctx.full_basis, ctx.full_dip, {init_full}, deltas);
    assert_closed(ctx.full_dip, ctx.keep, deltas);
    Subbasis sb = restrict_basis(ctx.full_basis, ctx.full_dip, ctx.keep);
    ctx.basis = std::move(sb.basis);
    ctx.dip = std::move(sb.dip);
    ctx.restricted = true;
    for (int i = 0; i < ctx.basis.size(); ++i)
      if (ctx.keep[i] == init_full) ctx.init_index = i;
    log << "sector restriction: " << ctx.basis.size() << " of "
        << ctx.full_basis.size() << " states\n";
  } else {
    ctx.basis = ctx.full_basis;
    ctx.dip = ctx.full_dip;
    ctx.keep.resize(ctx.full_basis.size());
    for (size_t i = 0; i < ctx.keep.size(); ++i) ctx.keep[i] = static_cast<int>(i);
    ctx.init_index = init_full;
  }
  return ctx;
}

}  // namespace

int cmd_propagate(const RunConfig& cfg, std::ostream& log) {
  PropagationContext ctx = make_context(cfg, log);
  const SpectralModel bath = bath_model_from_config(cfg.bath);
  const std::string hash = config_hash(cfg);
  TimeGridSpec grid{cfg.dynamics.t_max_fs, cfg.dynamics.samples};
  PropagationMethod method = PropagationMethod::Auto;
  if (cfg.dynamics.method == "expm") method = PropagationMethod::Expm;
  if (cfg.dynamics.method == "rk") method = PropagationMethod::RK;
  RKOptions rk;
  rk.rtol = cfg.dynamics.rtol;

  std::vector<RunResult> runs;
  for (const std::string& spec : cfg.dynamics.generators) {
    std::string kind = spec;
    bool cr = cfg.flags.counter_rotating;
    const auto colon = spec.find(':');
    if (colon != std::string::npos) {
      kind = spec.substr(0, colon);
      const std::string opt = spec.substr(colon + 1);
      if (opt == "cr_off") cr = false;
      else if (opt == "cr_on") cr = true;
      else throw ConfigError("unknown generator option: " + spec);
    }
    try {
      if (kind == "oracle") {
        OracleModel om;
        om.modes.push_back({cfg.dynamics.mode.omega_m_ev,
                            cfg.dynamics.mode.kappa_ev, cfg.dynamics.mode.g_ev,
                            cfg.dynamics.mode.polarizations});
        om.max_photons = cfg.dynamics.photon_max;
        const OracleGenerator oracle = build_oracle(ctx.basis, ctx.dip, om, cr);
        RunResult r = run_oracle(oracle, ctx.basis, ctx.init_index, grid, method, rk);
        if (!cr) r.generator_name = "oracle_rwa";
        runs.push_back(std::move(r));
      } else if (kind == "lindblad") {
        GeneratorSet g = geometric_mean_lindblad(
            ctx.full_basis, ctx.full_dip, bath, cr, cfg.flags.intermediate_levels);
        GeneratorSet gr = ctx.restricted ? restrict_generator(g, ctx.keep)
                                         : std::move(g);
        RunResult r = run_lindblad(gr, ctx.basis, ctx.init_index, grid, method,
                                   rk, cr ? "lindblad" : "lindblad_cr_off");
        runs.push_back(std::move(r));
      } else if (kind == "br") {
        const BRTensor t = build_br_tensor(ctx.basis, ctx.dip, bath, cr);
        RunResult r = run_br(t, ctx.basis, ctx.init_index, grid,
                             method == PropagationMethod::RK
                                 ? PropagationMethod::Auto
                                 : method,
                             rk);
        if (!cr) r.generator_name = "bloch_redfield_cr_off";
        runs.push_back(std::move(r));
      } else if (kind == "effective") {
        GeneratorSet g = geometric_mean_lindblad(
            ctx.full_basis, ctx.full_dip, bath, cr, cfg.flags.intermediate_levels);
        const CMat h = project_effective(g, ctx.full_basis, cfg.dynamics.initial.n);
        auto blocks = block_decompose(h, ctx.full_basis, cfg.dynamics.initial.n);
        const auto& ini = cfg.dynamics.initial;
        const int tj = static_cast<int>(std::lround(2.0 * ini.j));
        const int tmj = static_cast<int>(std::lround(2.0 * ini.mj));
        const int init_full = ctx.full_basis.find(ini.n, ini.l, tj, tmj);
        auto it = std::find_if(blocks.begin(), blocks.end(), [&](const EffectiveBlock& b) {
          return std::find(b.basis_indices.begin(), b.basis_indices.end(),
                           init_full) != b.basis_indices.end();
        });
        if (it == blocks.end())
          throw std::runtime_error("effective: no block contains the initial state");
        eigenanalyze(*it);
        RunResult r = run_effective(*it, ctx.full_basis, init_full, grid);
        if (!cr) r.generator_name = "effective_cr_off";
        runs.push_back(std::move(r));
      } else {
        throw ConfigError("unknown generator: " + kind);
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      log << "propagation failed for generator '" << spec << "': " << e.what()
          << "\n";
      return 1;
    }
  }

  std::filesystem::create_directories(cfg.output.dir);
  const bool sidecar =
      std::find(cfg.output.formats.begin(), cfg.output.formats.end(), "json") !=
      cfg.output.formats.end();
  for (const auto& r : runs)
    write_run_result(cfg.output.dir, r, hash, bath.describe(), sidecar);

  if (runs.size() > 1) {
    std::vector<DeviationReport> reports;
    std::vector<std::string> names;
    for (size_t i = 1; i < runs.size(); ++i) {
      reports.push_back(compare_runs(runs[0], runs[i], {},
                                     cfg.dynamics.compare_tolerance));
      names.push_back(runs[0].generator_name + " vs " + runs[i].generator_name);
    }
    write_deviation_report(cfg.output.dir + "/comparison.json", reports, names,
                           hash);
    for (size_t i = 0; i < reports.size(); ++i)
      log << names[i] << ": max deviation " << reports[i].overall_max << "\n";
  }
  log << "wrote " << runs.size() << " time series to " << cfg.output.dir << "\n";
  return 0;
}

int cmd_verify(const RunConfig& cfg, std::ostream& log) {
  const int failures = run_acceptance_suite(cfg, log);
  return failures == 0 ? 0 : 1;
}

}  // namespace vacmix
