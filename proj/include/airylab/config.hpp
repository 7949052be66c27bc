#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "airylab/grid.hpp"
#include "airylab/report.hpp"
#include "airylab/states.hpp"
#include "airylab/window.hpp"

namespace airylab {

/// Parse or validation failure of a run configuration (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Command { State, Evolve, Verify, Scan };

enum ExitCode : int { kExitOk = 0, kExitTolerance = 1, kExitConfig = 2, kExitIo = 3 };

enum class StateKind { Perelomov, Gaussian, XiEigenstate, BerryBalazs };

struct StateSpec {
  StateKind kind = StateKind::Perelomov;
  CoherentParams coherent;
  GaussianParams gaussian;
  double B = 1.0;
  Representation rep = Representation::Position;
  std::optional<Window> apodization;

  WaveField build(const Grid& grid, const PhysParams& phys) const;
};

/// A validated experiment ready to run.
struct Job {
  std::string name;
  nlohmann::json spec;
  std::function<ExperimentReport()> run;
};

struct OutputSpec {
  bool csv = true;
  bool svg = true;
};

struct RunConfig {
  Command command = Command::Verify;
  nlohmann::json raw;
  std::optional<Grid> grid;
  PhysParams phys;
  std::optional<StateSpec> state;
  std::vector<double> times;
  std::vector<Job> jobs;
  /// Scan only: dotted key path that was varied, and its values (one per job).
  std::string scan_parameter;
  std::vector<double> scan_values;
  OutputSpec outputs;
};

/// Validates the whole document (unknown keys are errors) and builds the jobs.
/// Throws ConfigError.
RunConfig parse_run_config(const nlohmann::json& doc);

/// Reads and parses a config file. Throws IoError if unreadable, ConfigError otherwise.
RunConfig load_run_config(const std::filesystem::path& path);

/// Worker count for experiment fan-out from AIRY_LAB_WORKERS; 1 when unset or invalid.
std::size_t worker_count();

/// Executes the command, writing report.json and any CSV/SVG artifacts into out_dir.
/// Returns kExitOk iff every declared tolerance passes, otherwise kExitTolerance.
int execute(const RunConfig& config, const std::filesystem::path& out_dir, std::ostream& log);

/// load + execute with the exit-code contract: 0 ok, 1 tolerance failure,
/// 2 parse/validation error, 3 I/O error. Diagnostics go to `err`.
int run_config_file(const std::filesystem::path& path, const std::filesystem::path& out_dir,
                    std::ostream& log, std::ostream& err);

}  // namespace airylab
