#ifndef VACMIX_OUTPUT_HPP
#define VACMIX_OUTPUT_HPP

#include <string>
#include <vector>

#include "vacmix/dynamics.hpp"
#include "vacmix/effective.hpp"

namespace vacmix {

// 17 significant digits; identical inputs give byte-identical bodies.
std::string format_g17(double v);

std::string fnv1a_hex(const std::string& s);

struct CsvTable {
  std::vector<std::string> comments;  // written as '# ...' lines
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

void write_csv(const std::string& path, const CsvTable& table);
void write_text(const std::string& path, const std::string& body);

// time series CSV ("t_fs, obs_1, ...") plus a JSON sidecar describing the
// observables, generator variant and model hash
void write_run_result(const std::string& dir, const RunResult& run,
                      const std::string& config_hash,
                      const std::string& model_desc, bool with_sidecar = true);

void write_sweep_table(const std::string& dir, const SweepTable& table,
                       const std::vector<double>& sweep_parameter,
                       const std::string& config_hash);

void write_deviation_report(const std::string& path,
                            const std::vector<DeviationReport>& reports,
                            const std::vector<std::string>& names,
                            const std::string& config_hash);

}  // namespace vacmix

#endif
