#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <doctest.h>
#include <json.hpp>

#include "airylab/config.hpp"
#include "airylab/io.hpp"

using namespace airylab;
namespace fs = std::filesystem;

namespace {

const fs::path kConfigs = AIRY_LAB_CONFIG_DIR;

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("airylab_cli_" + name);
  fs::remove_all(p);
  return p;
}

int run_cli(const fs::path& config, const fs::path& out) {
  const std::string cmd = std::string(AIRY_LAB_EXE) + " --config '" + config.string() + "' --out-dir '" +
                          out.string() + "' > '" + (fs::temp_directory_path() / "airylab_cli.log").string() +
                          "' 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

int run_json(const nlohmann::json& doc, const fs::path& out, std::string* err_text = nullptr) {
  const fs::path cfg = out.parent_path() / (out.filename().string() + ".json");
  fs::create_directories(cfg.parent_path());
  std::ofstream(cfg) << doc.dump();
  std::ostringstream log, err;
  const int code = run_config_file(cfg, out, log, err);
  if (err_text) *err_text = err.str();
  return code;
}

}  // namespace

TEST_CASE("cli: exit codes of the shipped configs") {
  const fs::path out = scratch("codes");
  CHECK(run_cli(kConfigs / "verify-eigen.json", out / "ok") == kExitOk);
  CHECK(run_cli(kConfigs / "tolerance-fail.json", out / "fail") == kExitTolerance);
  CHECK(run_cli(kConfigs / "bad-n-points.json", out / "bad") == kExitConfig);
  CHECK(run_cli(kConfigs / "does-not-exist.json", out / "missing") == kExitIo);
  fs::create_directories(out);
  { std::ofstream(out / "blocker") << "x"; }
  CHECK(run_cli(kConfigs / "verify-eigen.json", out / "blocker" / "sub") == kExitIo);

  const nlohmann::json report = nlohmann::json::parse(read_file(out / "ok" / "report.json"));
  CHECK(report["pass"] == true);
  CHECK(report["command"] == "verify");
  CHECK(report["reports"][0]["name"] == "eigenrelation");
  fs::remove_all(out);
}

TEST_CASE("cli: configuration errors name the offending field") {
  const fs::path out = scratch("cfg");
  std::string err;
  const nlohmann::json base = {{"command", "verify"},
                               {"grid", {{"n_points", 100}, {"x_min", -5.0}, {"x_max", 5.0}}},
                               {"experiment", {{"name", "eigenrelation"}, {"state", {{"eps", 1.0}}}}}};
  CHECK(run_json(base, out / "a", &err) == kExitConfig);
  CHECK(err.find("power of two") != std::string::npos);

  nlohmann::json unknown = base;
  unknown["grid"]["n_points"] = 64;
  unknown["experiment"]["colour"] = "blue";
  CHECK(run_json(unknown, out / "b", &err) == kExitConfig);
  CHECK(err.find("colour") != std::string::npos);

  nlohmann::json bad_cmd = base;
  bad_cmd["command"] = "dance";
  CHECK(run_json(bad_cmd, out / "c") == kExitConfig);

  nlohmann::json bad_state = base;
  bad_state["grid"]["n_points"] = 64;
  bad_state["experiment"]["state"] = {{"xi", 1.0}};
  CHECK(run_json(bad_state, out / "d", &err) == kExitConfig);
  CHECK(err.find("eps") != std::string::npos);

  std::ofstream(out / "broken.json") << "{ \"command\": ";
  std::ostringstream log, e2;
  CHECK(run_config_file(out / "broken.json", out / "e", log, e2) == kExitConfig);
  fs::remove_all(out);
}

TEST_CASE("cli: state, evolve and scan artifacts") {
  const fs::path out = scratch("art");
  CHECK(run_cli(kConfigs / "state.json", out / "state") == kExitOk);
  CHECK(fs::exists(out / "state" / "state.csv"));
  CHECK(fs::exists(out / "state" / "state.svg"));
  const CsvTable t = read_csv(out / "state" / "state.csv");
  CHECK(t.columns[0].size() == 2048);

  CHECK(run_cli(kConfigs / "evolve.json", out / "evolve") == kExitOk);
  const CsvTable traj = read_csv(out / "evolve" / "trajectory.csv");
  REQUIRE(traj.columns[1].size() == 5);
  // Ai(x) under free evolution: peak at x0 + t^2 / 4.
  CHECK(traj.columns[1][4] - traj.columns[1][0] == doctest::Approx(1.0).epsilon(1e-3));

  CHECK(run_cli(kConfigs / "scan-eps.json", out / "scan") == kExitOk);
  const CsvTable scan = read_csv(out / "scan" / "scan.csv");
  CHECK(scan.columns[0].size() == 4);

  // Same config twice: byte-identical artifacts.
  CHECK(run_cli(kConfigs / "state.json", out / "state2") == kExitOk);
  CHECK(read_file(out / "state" / "state.svg") == read_file(out / "state2" / "state.svg"));
  CHECK(read_file(out / "state" / "state.csv") == read_file(out / "state2" / "state.csv"));
  fs::remove_all(out);
}

TEST_CASE("cli: worker count from the environment") {
  ::setenv("AIRY_LAB_WORKERS", "4", 1);
  CHECK(worker_count() == 4);
  ::setenv("AIRY_LAB_WORKERS", "zero", 1);
  CHECK(worker_count() == 1);
  ::setenv("AIRY_LAB_WORKERS", "1000", 1);
  CHECK(worker_count() == 64);
  ::unsetenv("AIRY_LAB_WORKERS");
  CHECK(worker_count() == 1);

  // Parallel and sequential runs produce the same reports.
  const fs::path out = scratch("workers");
  std::ostringstream log, err;
  CHECK(run_config_file(kConfigs / "representations.json", out / "seq", log, err) == kExitOk);
  ::setenv("AIRY_LAB_WORKERS", "3", 1);
  CHECK(run_config_file(kConfigs / "representations.json", out / "par", log, err) == kExitOk);
  ::unsetenv("AIRY_LAB_WORKERS");
  CHECK(read_file(out / "seq" / "report.json") == read_file(out / "par" / "report.json"));
  fs::remove_all(out);
}
