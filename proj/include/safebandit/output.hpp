#pragma once

// Persistence: per-agent aggregate CSV, pull-count sidecar JSON, bound
// reports and sweep tables.

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>

#include <json.hpp>

#include "safebandit/bounds.hpp"
#include "safebandit/harness.hpp"

namespace safebandit {

inline constexpr const char* kAggregateCsvHeader =
    "t,regret_mean,regret_median,regret_q1,regret_q3,regret_min,regret_max,"
    "unsafe_mean,unsafe_median,unsafe_q1,unsafe_q3,violation_mean";

void write_aggregate_csv(std::ostream& out, const AggregateSeries& series);

/// Final-round pull counts (mean and per trial), per-trial final metrics and
/// the failure log for one agent.
nlohmann::json sidecar_json(const AgentResult& result);

nlohmann::json to_json(const BoundReport& report);

/// Writes <agent-id>.csv and <agent-id>.pulls.json per agent into dir.
void write_experiment(const std::filesystem::path& dir, const ExperimentResult& result);

inline constexpr const char* kSweepCsvHeader =
    "value,agent,trials,failed,regret_median,regret_mean,unsafe_median,unsafe_mean,violation_mean";

void write_sweep_csv(std::ostream& out, std::span<const SweepPoint> points);

/// Makes an agent id safe to use as a file stem.
std::string file_stem(std::string_view id);

}  // namespace safebandit
