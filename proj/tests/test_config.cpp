#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "vacmix/commands.hpp"
#include "vacmix/config.hpp"
#include "vacmix/output.hpp"
#include "vacmix/verify.hpp"

using namespace vacmix;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string temp_dir(const char* name) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::filesystem::create_directories(p);
  return p.string();
}

}  // namespace

TEST_CASE("config round trip and unknown-key rejection") {
  const RunConfig def;
  const std::string text = serialize_config(def);
  const RunConfig back = parse_config_text(text);
  CHECK(serialize_config(back) == text);
  CHECK(config_hash(back) == config_hash(def));

  CHECK_THROWS_AS(parse_config_text("{\"atom\": {\"n_maximum\": 4}}"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("{\"typo\": 1}"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("{\"dynamics\": {\"mode\": {\"q\": 1}}}"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("not json"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("{\"bath\": {\"variant\": \"sinc\"}}"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("{\"atom\": {\"n_max\": 0}}"), ConfigError);

  // values survive the round trip exactly
  RunConfig c;
  c.bath.g_ev = 1.23456789012345e-4;
  c.dynamics.t_max_fs = 98765.4321;
  const RunConfig c2 = parse_config_text(serialize_config(c));
  CHECK(c2.bath.g_ev == c.bath.g_ev);
  CHECK(c2.dynamics.t_max_fs == c.dynamics.t_max_fs);
}

TEST_CASE("csv output is deterministic and carries the config hash") {
  const std::string dir = temp_dir("vacmix_csv_test");
  RunResult r;
  r.generator_name = "test";
  r.t_fs = {0.0, 1.0};
  r.obs_labels = {"a", "b"};
  r.values = {{0.125, 0.25}, {1.0 / 3.0, 2.0 / 3.0}};
  write_run_result(dir, r, "deadbeefdeadbeef", "model", true);
  const std::string body1 = slurp(dir + "/test.csv");
  write_run_result(dir, r, "deadbeefdeadbeef", "model", true);
  const std::string body2 = slurp(dir + "/test.csv");
  CHECK(body1 == body2);
  CHECK(body1.find("# vacmix") == 0);
  CHECK(body1.find("# config deadbeefdeadbeef") != std::string::npos);
  CHECK(body1.find("0.33333333333333331") != std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("cmd_spectra writes tables with the lambda zero crossing") {
  RunConfig cfg;
  cfg.output.dir = temp_dir("vacmix_spectra_test");
  cfg.spectra = {1.94, 1.96, 201};
  std::ostringstream log;
  CHECK(cmd_spectra(cfg, log) == 0);
  const std::string body = slurp(cfg.output.dir + "/spectra.csv");
  CHECK(!body.empty());
  // lambda_zz changes sign across omega_m = 1.95
  std::istringstream rows(body);
  std::string line;
  double before = 0.0, after = 0.0;
  while (std::getline(rows, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'o') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double w, gxx, gzz, lxx, lzz;
    ls >> w >> gxx >> gzz >> lxx >> lzz;
    if (w < 1.9499) before = lzz;
    if (w > 1.9501 && after == 0.0) after = lzz;
  }
  CHECK(before < 0.0);
  CHECK(after > 0.0);

  RunConfig bad = cfg;
  bad.spectra.points = 0;
  CHECK_THROWS_AS(cmd_spectra(bad, log), ConfigError);
  bad.spectra = {2.0, 1.0, 10};
  CHECK_THROWS_AS(cmd_spectra(bad, log), ConfigError);
  std::filesystem::remove_all(cfg.output.dir);
}

TEST_CASE("cmd_sweep requires existing spectral files") {
  RunConfig cfg;
  cfg.bath.sweep_files = {"/nonexistent/vacmix_point.dat"};
  std::ostringstream log;
  CHECK_THROWS_AS(cmd_sweep(cfg, log), ConfigError);
  cfg.bath.sweep_files.clear();
  CHECK_THROWS_AS(cmd_sweep(cfg, log), ConfigError);
}

TEST_CASE("cmd_propagate: zero-duration window yields the initial populations") {
  RunConfig cfg;
  cfg.atom.n_max = 2;
  cfg.dynamics.initial = {2, 1, 1.5, 0.5};
  cfg.dynamics.t_max_fs = 0.0;
  cfg.dynamics.samples = 1;
  cfg.dynamics.generators = {"lindblad"};
  cfg.output.dir = temp_dir("vacmix_prop_test");
  std::ostringstream log;
  CHECK(cmd_propagate(cfg, log) == 0);
  const std::string body = slurp(cfg.output.dir + "/lindblad.csv");
  // exactly one data row: t = 0 with a single unit population
  int data_rows = 0;
  std::istringstream rows(body);
  std::string line;
  std::string data_line;
  while (std::getline(rows, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 't') continue;
    ++data_rows;
    data_line = line;
  }
  CHECK(data_rows == 1);
  // the row holds t = 0 plus populations summing to one, all mass on the
  // initial state
  std::replace(data_line.begin(), data_line.end(), ',', ' ');
  std::istringstream ls(data_line);
  double t0 = -1.0, v = 0.0, sum = 0.0, peak = 0.0;
  ls >> t0;
  while (ls >> v) {
    sum += v;
    peak = std::max(peak, v);
  }
  CHECK(t0 == 0.0);
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(peak == doctest::Approx(1.0).epsilon(1e-14));
  std::filesystem::remove_all(cfg.output.dir);
}

TEST_CASE("verify: fault injection breaks the dark-state criterion") {
  // driving the xx/yy columns as strongly as zz floods the even block from
  // every spherical component: no protected state survives
  const vacmix::CriterionResult faulty = vacmix::criterion_dark_state(true);
  CHECK(!faulty.pass);
}

TEST_CASE("verify: configuration errors surface before any physics") {
  RunConfig cfg;
  cfg.bath.variant = "tabulated";
  cfg.bath.file = "/nonexistent/vacmix_bath.dat";
  std::ostringstream log;
  CHECK_THROWS_AS(cmd_verify(cfg, log), ConfigError);
}

TEST_CASE("polarization parsing") {
  CHECK(deltas_for_polarizations("z") == std::vector<int>{0});
  const auto dx = deltas_for_polarizations("x");
  CHECK(dx.size() == 2);
  CHECK_THROWS_AS(deltas_for_polarizations(""), ConfigError);
  CHECK_THROWS_AS(deltas_for_polarizations("w"), ConfigError);
}
