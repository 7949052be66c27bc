#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace airylab {

enum class Comparison { Less, LessEqual, Greater, GreaterEqual };

/// One metric judged against one threshold.
struct Check {
  std::string metric;
  Comparison cmp = Comparison::Less;
  double threshold = 0.0;
  double value = 0.0;
  bool passed = false;
};

/// Outcome of a named verification run. Reproducible from `config` alone.
struct ExperimentReport {
  std::string name;
  std::map<std::string, double> metrics;
  std::vector<Check> checks;
  /// Optional named columns (e.g. a trajectory "t" / "x_peak").
  std::map<std::string, std::vector<double>> series;
  nlohmann::json config = nlohmann::json::object();

  /// Records a metric.
  void set(const std::string& metric, double value) { metrics[metric] = value; }
  /// Records a metric together with the threshold it is judged against.
  void judge(const std::string& metric, double value, Comparison cmp, double threshold);

  bool pass() const;
  nlohmann::json to_json() const;
};

/// Thrown when a tracked feature or support leaves the trusted part of the grid.
class WindowEscape : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string_view to_string(Comparison c);

/// JSON value for a double; non-finite values become strings ("nan", "inf", "-inf").
nlohmann::json json_number(double v);

}  // namespace airylab
