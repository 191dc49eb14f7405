#ifndef VACMIX_CONFIG_HPP
#define VACMIX_CONFIG_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "vacmix/constants.hpp"

namespace vacmix {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct AtomConfig {
  int n_max = 4;
  double alpha = kFineStructure;
  int target_n = 3;
  double target_mj = 0.5;
  std::string target_parity = "even";
};

struct BathConfig {
  std::string variant = "lorentzian_axial";  // or lorentzian_isotropic, tabulated, flat
  double g_ev = 4.024922359499622e-4;        // 9/sqrt(5) * 1e-4
  double kappa_ev = 2e-3;
  double omega_m_ev = 1.95;
  double flat_j0_ev = 0.0;
  std::string file;
  std::vector<std::string> sweep_files;
  std::string out_of_grid = "zero";
};

struct FlagsConfig {
  bool counter_rotating = true;
  std::string secularization = "partial_geometric_mean";  // or full, none
  std::vector<int> intermediate_levels;
};

struct InitialStateConfig {
  int n = 3;
  int l = 0;
  double j = 0.5;
  double mj = 0.5;
};

struct ModeConfig {
  double omega_m_ev = 1.95;
  double kappa_ev = 2e-3;
  double g_ev = 4.024922359499622e-4;
  std::string polarizations = "z";
};

struct DynamicsConfig {
  InitialStateConfig initial;
  // 1e6 hbar/eV: long enough to resolve the shift-induced oscillations and
  // the slow intra-level refilling
  double t_max_fs = 1.0e6 * kHbarEVs * 1e15;
  int samples = 1001;
  double rtol = 1e-9;
  std::vector<std::string> generators = {"oracle", "lindblad", "effective"};
  int photon_max = 1;
  ModeConfig mode;
  bool restrict_to_reachable = true;
  std::string method = "auto";  // auto, expm, rk
  double compare_tolerance = 0.02;
};

struct SpectraConfig {
  double omega_min_ev = 1.8;
  double omega_max_ev = 2.1;
  int points = 601;
};

struct OutputConfig {
  std::string dir = "out";
  std::vector<std::string> formats = {"csv", "json"};
};

struct RunConfig {
  AtomConfig atom;
  BathConfig bath;
  FlagsConfig flags;
  DynamicsConfig dynamics;
  SpectraConfig spectra;
  OutputConfig output;
  int threads = 0;
  unsigned seed = 12345;
};

// JSON round trip. Unknown keys are rejected with their path.
RunConfig parse_config_text(const std::string& json_text);
RunConfig load_config_file(const std::string& path);
std::string serialize_config(const RunConfig& c);  // canonical JSON
std::string config_hash(const RunConfig& c);       // 16-hex FNV-1a of canonical form

}  // namespace vacmix

#endif
