#pragma once

// Experiment configuration: a single JSON document.
//
//   {
//     "instance": { "preset": "drug-trial", "alpha": 0.21 }
//              | { "mu": [...], "nu": [...], "alpha": 0.5 }
//              | { "family": "general-bounded", "alpha": 0.5,
//                  "arms": [ { "reward": {"kind": "uniform", "lo": 0.2, "hi": 0.8},
//                              "risk":   {"kind": "point", "value": 0.1} } ] },
//     "horizon": 50000,
//     "trials": 100,
//     "base_seed": 1,
//     "record_stride": 50,
//     "workers": 4,
//     "agents": [ "docb", { "algorithm": "tsbu", "delta_schedule": "theoretical" } ]
//   }
//
// Presets: drug-trial, two-arm, policy-multi, policy-single, naive-ts, gap-large,
// gap-small (the gap presets take an integer-valued "i"), bayesucb-probe.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "safebandit/agents.hpp"
#include "safebandit/instance.hpp"

namespace safebandit {

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  explicit ExperimentConfig(SafeBanditInstance inst) : instance(std::move(inst)) {}

  SafeBanditInstance instance;
  long long horizon = 1;
  int trials = 1;
  std::vector<AgentSpec> agents;
  std::uint64_t base_seed = 0;
  long long record_stride = 50;
  std::optional<int> workers;

  void validate() const;
};

/// Builds the instance described by an "instance" object.
SafeBanditInstance parse_instance(const nlohmann::json& j);

AgentSpec parse_agent(const nlohmann::json& j);

/// Throws ConfigError with a readable message on any schema problem.
ExperimentConfig parse_config(const nlohmann::json& j);

ExperimentConfig load_config(const std::string& path);
nlohmann::json load_json(const std::string& path);

/// Sets the value at a dotted path ("instance.alpha", "agents.0.slack_constant").
/// Numeric components index arrays; a string agent entry is promoted to an
/// object before one of its fields is set.
void set_path(nlohmann::json& doc, std::string_view dotted_path, const nlohmann::json& value);

}  // namespace safebandit
