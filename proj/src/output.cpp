#include "vacmix/output.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "vacmix/constants.hpp"

namespace vacmix {

std::string format_g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf);
}

std::string fnv1a_hex(const std::string& s) {
  unsigned long long h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", h);
  return std::string(buf);
}

void write_text(const std::string& path, const std::string& body) {
  std::filesystem::create_directories(
      std::filesystem::path(path).parent_path().empty()
          ? "."
          : std::filesystem::path(path).parent_path().string());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << body;
}

void write_csv(const std::string& path, const CsvTable& table) {
  std::string body;
  body += "# vacmix " + std::string(kVersion) + "\n";
  for (const auto& c : table.comments) body += "# " + c + "\n";
  for (size_t i = 0; i < table.columns.size(); ++i) {
    body += table.columns[i];
    body += (i + 1 < table.columns.size()) ? "," : "\n";
  }
  for (const auto& row : table.rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      body += format_g17(row[i]);
      body += (i + 1 < row.size()) ? "," : "\n";
    }
  }
  write_text(path, body);
}

void write_run_result(const std::string& dir, const RunResult& run,
                      const std::string& config_hash,
                      const std::string& model_desc, bool with_sidecar) {
  std::filesystem::create_directories(dir);
  CsvTable t;
  t.comments = {"config " + config_hash, "generator " + run.generator_name};
  t.columns.push_back("t_fs");
  for (const auto& l : run.obs_labels) t.columns.push_back(l);
  for (size_t s = 0; s < run.t_fs.size(); ++s) {
    std::vector<double> row;
    row.push_back(run.t_fs[s]);
    for (const auto& v : run.values) row.push_back(v[s]);
    t.rows.push_back(std::move(row));
  }
  const std::string base = dir + "/" + run.generator_name;
  write_csv(base + ".csv", t);
  if (with_sidecar) {
    nlohmann::json j;
    j["generator"] = run.generator_name;
    j["config_hash"] = config_hash;
    j["model"] = model_desc;
    j["model_hash"] = fnv1a_hex(model_desc);
    j["observables"] = run.obs_labels;
    j["samples"] = run.t_fs.size();
    j["t_max_fs"] = run.t_fs.empty() ? 0.0 : run.t_fs.back();
    write_text(base + ".meta.json", j.dump(2) + "\n");
  }
}

void write_sweep_table(const std::string& dir, const SweepTable& table,
                       const std::vector<double>& sweep_parameter,
                       const std::string& config_hash) {
  std::filesystem::create_directories(dir);
  const int d = table.tracked_states;
  const auto state_cols = [&](const std::string& prefix) {
    std::vector<std::string> cols = {"point", "parameter"};
    for (int k = 0; k < d; ++k)
      cols.push_back(prefix + "_" + std::to_string(k));
    return cols;
  };
  const auto emit = [&](const std::string& name,
                        const std::vector<double> SweepPoint::*field,
                        double scale) {
    CsvTable t;
    t.comments = {"config " + config_hash};
    t.columns = state_cols(name);
    for (size_t p = 0; p < table.points.size(); ++p) {
      std::vector<double> row = {static_cast<double>(p), sweep_parameter[p]};
      for (int k = 0; k < d; ++k) row.push_back((table.points[p].*field)[k] * scale);
      t.rows.push_back(std::move(row));
    }
    write_csv(dir + "/sweep_" + name + ".csv", t);
  };
  emit("energy_ev", &SweepPoint::energies, kHartreeEV);
  emit("energy_centered_ev", &SweepPoint::energies_centered, kHartreeEV);
  emit("rate_ev", &SweepPoint::rates, kHartreeEV);
  emit("participation", &SweepPoint::participation, 1.0);
  emit("ref_energy_centered_ev", &SweepPoint::ref_energies_centered, kHartreeEV);
  emit("ref_rate_ev", &SweepPoint::ref_rates, kHartreeEV);

  // long format: one row per (point, eigenstate), tie flags included
  CsvTable t;
  t.comments = {"config " + config_hash};
  t.columns = {"point",  "parameter",     "state",        "energy_ev",
               "energy_centered_ev", "rate_ev", "participation", "tie_broken"};
  for (size_t p = 0; p < table.points.size(); ++p) {
    const SweepPoint& pt = table.points[p];
    for (int k = 0; k < d; ++k)
      t.rows.push_back({static_cast<double>(p), sweep_parameter[p],
                        static_cast<double>(k), pt.energies[k] * kHartreeEV,
                        pt.energies_centered[k] * kHartreeEV,
                        pt.rates[k] * kHartreeEV, pt.participation[k],
                        pt.tie_broken ? 1.0 : 0.0});
  }
  write_csv(dir + "/sweep_states.csv", t);

  nlohmann::json j;
  j["config_hash"] = config_hash;
  j["tracked_states"] = d;
  std::vector<std::string> labels;
  for (const auto& q : table.labels) labels.push_back(q.label());
  j["block_states"] = labels;
  j["points"] = table.points.size();
  write_text(dir + "/sweep.meta.json", j.dump(2) + "\n");
}

void write_deviation_report(const std::string& path,
                            const std::vector<DeviationReport>& reports,
                            const std::vector<std::string>& names,
                            const std::string& config_hash) {
  nlohmann::json j;
  j["config_hash"] = config_hash;
  nlohmann::json arr = nlohmann::json::array();
  for (size_t i = 0; i < reports.size(); ++i) {
    nlohmann::json r;
    r["comparison"] = names[i];
    r["tolerance"] = reports[i].tolerance;
    r["overall_max_deviation"] = reports[i].overall_max;
    r["pass"] = reports[i].pass;
    nlohmann::json per = nlohmann::json::array();
    for (size_t k = 0; k < reports[i].labels.size(); ++k)
      per.push_back({{"observable", reports[i].labels[k]},
                     {"max", reports[i].max_dev[k]},
                     {"rms", reports[i].rms_dev[k]}});
    r["observables"] = per;
    arr.push_back(std::move(r));
  }
  j["reports"] = arr;
  write_text(path, j.dump(2) + "\n");
}

}  // namespace vacmix
