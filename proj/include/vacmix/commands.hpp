#ifndef VACMIX_COMMANDS_HPP
#define VACMIX_COMMANDS_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "vacmix/config.hpp"
#include "vacmix/dynamics.hpp"

namespace vacmix {

// CLI entry points. Return 0 on success, 1 on a physics-criterion failure,
// 2 on configuration errors (the CLI maps exceptions the same way).

int cmd_spectra(const RunConfig& cfg, std::ostream& log);
int cmd_sweep(const RunConfig& cfg, std::ostream& log);
int cmd_propagate(const RunConfig& cfg, std::ostream& log);
int cmd_verify(const RunConfig& cfg, std::ostream& log);

// shared helpers
SpectralModel bath_model_from_config(const BathConfig& bath);
std::vector<int> deltas_for_polarizations(const std::string& pols);

}  // namespace vacmix

#endif
