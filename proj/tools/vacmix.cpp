#include <iostream>

#include <CLI11.hpp>

#include "vacmix/commands.hpp"
#include "vacmix/kernels.hpp"
#include "vacmix/parallel.hpp"

using namespace vacmix;

int main(int argc, char** argv) {
  CLI::App app{"vacmix: field-mixed hydrogen level structure and dynamics"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, out_dir;
  int threads = 0;
  unsigned seed = 0;
  bool have_seed = false;
  app.add_option("--config", config_path, "JSON run configuration");
  app.add_option("--out", out_dir, "output directory (overrides config)");
  app.add_option("--threads", threads, "worker threads (0 = hardware)");
  app.add_option("--seed", seed, "seed for randomized property checks")
      ->each([&](const std::string&) { have_seed = true; });

  auto* spectra = app.add_subcommand("spectra", "write gamma/lambda tables");
  auto* sweep = app.add_subcommand("sweep", "eigenstructure across a model family");
  auto* propagate = app.add_subcommand("propagate", "time-propagate the configured generators");
  auto* verify = app.add_subcommand("verify", "run the acceptance criteria");

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig cfg;
    if (!config_path.empty()) cfg = load_config_file(config_path);
    if (!out_dir.empty()) cfg.output.dir = out_dir;
    if (threads > 0) cfg.threads = threads;
    if (have_seed) cfg.seed = seed;
    if (cfg.threads > 0) set_default_threads(cfg.threads);

    if (spectra->parsed()) return cmd_spectra(cfg, std::cout);
    if (sweep->parsed()) return cmd_sweep(cfg, std::cout);
    if (propagate->parsed()) return cmd_propagate(cfg, std::cout);
    if (verify->parsed()) return cmd_verify(cfg, std::cout);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
