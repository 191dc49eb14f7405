#include "vacmix/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "vacmix/output.hpp"

namespace vacmix {

using json = nlohmann::json;

namespace {

void require_known_keys(const json& j, const std::string& path,
                        const std::set<std::string>& known) {
  if (!j.is_object()) throw ConfigError(path + ": expected an object");
  for (const auto& [key, _] : j.items())
    if (!known.count(key))
      throw ConfigError("unknown config key: " + path + "." + key);
}

template <typename T>
void get_to(const json& j, const char* key, T& out) {
  if (j.contains(key)) j.at(key).get_to(out);
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  require_known_keys(j, "$",
                     {"atom", "bath", "flags", "dynamics", "spectra", "output",
                      "threads", "seed"});
  RunConfig c;
  if (j.contains("atom")) {
    const json& a = j["atom"];
    require_known_keys(a, "atom",
                       {"n_max", "alpha", "target_n", "target_mj", "target_parity"});
    get_to(a, "n_max", c.atom.n_max);
    get_to(a, "alpha", c.atom.alpha);
    get_to(a, "target_n", c.atom.target_n);
    get_to(a, "target_mj", c.atom.target_mj);
    get_to(a, "target_parity", c.atom.target_parity);
    if (c.atom.n_max < 1) throw ConfigError("atom.n_max must be >= 1");
    if (c.atom.target_parity != "even" && c.atom.target_parity != "odd")
      throw ConfigError("atom.target_parity must be even or odd");
  }
  if (j.contains("bath")) {
    const json& b = j["bath"];
    require_known_keys(b, "bath",
                       {"variant", "g_ev", "kappa_ev", "omega_m_ev",
                        "flat_j0_ev", "file", "sweep_files", "out_of_grid"});
    get_to(b, "variant", c.bath.variant);
    get_to(b, "g_ev", c.bath.g_ev);
    get_to(b, "kappa_ev", c.bath.kappa_ev);
    get_to(b, "omega_m_ev", c.bath.omega_m_ev);
    get_to(b, "flat_j0_ev", c.bath.flat_j0_ev);
    get_to(b, "file", c.bath.file);
    get_to(b, "sweep_files", c.bath.sweep_files);
    get_to(b, "out_of_grid", c.bath.out_of_grid);
    static const std::set<std::string> variants = {
        "lorentzian_axial", "lorentzian_isotropic", "tabulated", "flat"};
    if (!variants.count(c.bath.variant))
      throw ConfigError("bath.variant unknown: " + c.bath.variant);
    if (c.bath.out_of_grid != "zero" && c.bath.out_of_grid != "error")
      throw ConfigError("bath.out_of_grid must be zero or error");
  }
  if (j.contains("flags")) {
    const json& f = j["flags"];
    require_known_keys(f, "flags",
                       {"counter_rotating", "secularization", "intermediate_levels"});
    get_to(f, "counter_rotating", c.flags.counter_rotating);
    get_to(f, "secularization", c.flags.secularization);
    get_to(f, "intermediate_levels", c.flags.intermediate_levels);
    static const std::set<std::string> secs = {"partial_geometric_mean", "full",
                                               "none"};
    if (!secs.count(c.flags.secularization))
      throw ConfigError("flags.secularization unknown: " + c.flags.secularization);
  }
  if (j.contains("dynamics")) {
    const json& d = j["dynamics"];
    require_known_keys(d, "dynamics",
                       {"initial", "t_max_fs", "samples", "rtol", "generators",
                        "photon_max", "mode", "restrict_to_reachable", "method",
                        "compare_tolerance"});
    if (d.contains("initial")) {
      const json& i = d["initial"];
      require_known_keys(i, "dynamics.initial", {"n", "l", "j", "mj"});
      get_to(i, "n", c.dynamics.initial.n);
      get_to(i, "l", c.dynamics.initial.l);
      get_to(i, "j", c.dynamics.initial.j);
      get_to(i, "mj", c.dynamics.initial.mj);
    }
    get_to(d, "t_max_fs", c.dynamics.t_max_fs);
    get_to(d, "samples", c.dynamics.samples);
    get_to(d, "rtol", c.dynamics.rtol);
    get_to(d, "generators", c.dynamics.generators);
    get_to(d, "photon_max", c.dynamics.photon_max);
    get_to(d, "restrict_to_reachable", c.dynamics.restrict_to_reachable);
    get_to(d, "method", c.dynamics.method);
    get_to(d, "compare_tolerance", c.dynamics.compare_tolerance);
    if (d.contains("mode")) {
      const json& m = d["mode"];
      require_known_keys(m, "dynamics.mode",
                         {"omega_m_ev", "kappa_ev", "g_ev", "polarizations"});
      get_to(m, "omega_m_ev", c.dynamics.mode.omega_m_ev);
      get_to(m, "kappa_ev", c.dynamics.mode.kappa_ev);
      get_to(m, "g_ev", c.dynamics.mode.g_ev);
      get_to(m, "polarizations", c.dynamics.mode.polarizations);
    }
    if (c.dynamics.samples < 1) throw ConfigError("dynamics.samples must be >= 1");
    if (c.dynamics.t_max_fs < 0.0) throw ConfigError("dynamics.t_max_fs must be >= 0");
    if (c.dynamics.method != "auto" && c.dynamics.method != "expm" &&
        c.dynamics.method != "rk")
      throw ConfigError("dynamics.method must be auto, expm or rk");
  }
  if (j.contains("spectra")) {
    const json& s = j["spectra"];
    require_known_keys(s, "spectra", {"omega_min_ev", "omega_max_ev", "points"});
    get_to(s, "omega_min_ev", c.spectra.omega_min_ev);
    get_to(s, "omega_max_ev", c.spectra.omega_max_ev);
    get_to(s, "points", c.spectra.points);
  }
  if (j.contains("output")) {
    const json& o = j["output"];
    require_known_keys(o, "output", {"dir", "formats"});
    get_to(o, "dir", c.output.dir);
    get_to(o, "formats", c.output.formats);
  }
  get_to(j, "threads", c.threads);
  get_to(j, "seed", c.seed);
  return c;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::string serialize_config(const RunConfig& c) {
  json j;
  j["atom"] = {{"n_max", c.atom.n_max},
               {"alpha", c.atom.alpha},
               {"target_n", c.atom.target_n},
               {"target_mj", c.atom.target_mj},
               {"target_parity", c.atom.target_parity}};
  j["bath"] = {{"variant", c.bath.variant},
               {"g_ev", c.bath.g_ev},
               {"kappa_ev", c.bath.kappa_ev},
               {"omega_m_ev", c.bath.omega_m_ev},
               {"flat_j0_ev", c.bath.flat_j0_ev},
               {"file", c.bath.file},
               {"sweep_files", c.bath.sweep_files},
               {"out_of_grid", c.bath.out_of_grid}};
  j["flags"] = {{"counter_rotating", c.flags.counter_rotating},
                {"secularization", c.flags.secularization},
                {"intermediate_levels", c.flags.intermediate_levels}};
  j["dynamics"] = {{"initial",
                    {{"n", c.dynamics.initial.n},
                     {"l", c.dynamics.initial.l},
                     {"j", c.dynamics.initial.j},
                     {"mj", c.dynamics.initial.mj}}},
                   {"t_max_fs", c.dynamics.t_max_fs},
                   {"samples", c.dynamics.samples},
                   {"rtol", c.dynamics.rtol},
                   {"generators", c.dynamics.generators},
                   {"photon_max", c.dynamics.photon_max},
                   {"mode",
                    {{"omega_m_ev", c.dynamics.mode.omega_m_ev},
                     {"kappa_ev", c.dynamics.mode.kappa_ev},
                     {"g_ev", c.dynamics.mode.g_ev},
                     {"polarizations", c.dynamics.mode.polarizations}}},
                   {"restrict_to_reachable", c.dynamics.restrict_to_reachable},
                   {"method", c.dynamics.method},
                   {"compare_tolerance", c.dynamics.compare_tolerance}};
  j["spectra"] = {{"omega_min_ev", c.spectra.omega_min_ev},
                  {"omega_max_ev", c.spectra.omega_max_ev},
                  {"points", c.spectra.points}};
  j["output"] = {{"dir", c.output.dir}, {"formats", c.output.formats}};
  j["threads"] = c.threads;
  j["seed"] = c.seed;
  return j.dump(2);
}

std::string config_hash(const RunConfig& c) {
  return fnv1a_hex(serialize_config(c));
}

}  // namespace vacmix
