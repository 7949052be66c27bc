#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "airylab/config.hpp"

int main(int argc, char** argv) {
  CLI::App app{"airy-lab: accelerating Airy states on a spectral grid"};
  std::string config;
  std::string out_dir = ".";
  std::optional<unsigned long> seed;
  app.add_option("--config", config, "run configuration (JSON)")->required();
  app.add_option("--out-dir", out_dir, "directory for report.json, CSV and SVG outputs");
  app.add_option("--seed", seed, "reserved; every command is deterministic");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return airylab::kExitConfig;
  }
  return airylab::run_config_file(config, out_dir, std::cout, std::cerr);
}
