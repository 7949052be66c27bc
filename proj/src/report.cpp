#include "airylab/report.hpp"

#include <cmath>

namespace airylab {

std::string_view to_string(Comparison c) {
  switch (c) {
    case Comparison::Less: return "<";
    case Comparison::LessEqual: return "<=";
    case Comparison::Greater: return ">";
    case Comparison::GreaterEqual: return ">=";
  }
  return "?";
}

nlohmann::json json_number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

void ExperimentReport::judge(const std::string& metric, double value, Comparison cmp,
                             double threshold) {
  set(metric, value);
  bool ok = false;
  switch (cmp) {
    case Comparison::Less: ok = value < threshold; break;
    case Comparison::LessEqual: ok = value <= threshold; break;
    case Comparison::Greater: ok = value > threshold; break;
    case Comparison::GreaterEqual: ok = value >= threshold; break;
  }
  checks.push_back({metric, cmp, threshold, value, ok});
}

bool ExperimentReport::pass() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

nlohmann::json ExperimentReport::to_json() const {
  nlohmann::json j;
  j["name"] = name;
  j["pass"] = pass();
  nlohmann::json m = nlohmann::json::object();
  for (const auto& [k, v] : metrics) m[k] = json_number(v);
  j["metrics"] = m;
  nlohmann::json cs = nlohmann::json::array();
  for (const auto& c : checks) {
    cs.push_back({{"metric", c.metric},
                  {"comparison", std::string(to_string(c.cmp))},
                  {"threshold", json_number(c.threshold)},
                  {"value", json_number(c.value)},
                  {"passed", c.passed}});
  }
  j["checks"] = cs;
  j["config"] = config;
  return j;
}

}  // namespace airylab
