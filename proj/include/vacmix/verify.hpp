#ifndef VACMIX_VERIFY_HPP
#define VACMIX_VERIFY_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "vacmix/config.hpp"

namespace vacmix {

struct CriterionResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Runs every acceptance criterion, printing one PASS/FAIL line per criterion
// with the measured values. Returns the number of failures.
int run_acceptance_suite(const RunConfig& cfg, std::ostream& log);

// Exposed separately so fault injection can be tested: with
// swap_polarizations the bath drives x/y instead of z and the protected state
// disappears.
CriterionResult criterion_dark_state(bool swap_polarizations);

}  // namespace vacmix

#endif
