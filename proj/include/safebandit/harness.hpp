#pragma once

// Seeded multi-trial execution. run_experiment spreads (agent, trial) jobs
// over OpenMP threads; run_experiment_serial is the single-threaded reference
// the parallel path is tested against. Both produce identical results.

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "safebandit/aggregate.hpp"
#include "safebandit/config.hpp"

namespace safebandit {

/// A fault inside one trial, tagged with the agent and trial that raised it.
class TrialError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct TrialFailure {
  std::size_t trial;
  std::string message;

  bool operator==(const TrialFailure&) const = default;
};

struct AgentResult {
  AgentSpec spec;
  AggregateSeries aggregate;
  std::vector<TrialFailure> failures;
};

struct ExperimentResult {
  std::vector<AgentResult> agents;

  std::size_t failed_trials() const;
  const AgentResult& for_agent(std::string_view id) const;
};

/// Seeds for the environment, agent and binarization streams of one trial.
struct TrialSeeds {
  std::uint64_t environment;
  std::uint64_t agent;
  std::uint64_t binarize;
};
TrialSeeds trial_seeds(std::uint64_t base_seed, const AgentSpec& spec, std::size_t trial_index);

/// One trial of T rounds: act, sample, binarize (Bayesian agents on bounded
/// laws), observe. Throws TrialError.
TrialSeries run_trial(const ExperimentConfig& config, const AgentSpec& spec, std::size_t trial_index);

/// Worker count: explicit flag, else SAFEBANDIT_WORKERS, else config, else
/// the OpenMP default.
int resolve_workers(std::optional<int> flag, const ExperimentConfig& config);

ExperimentResult run_experiment(const ExperimentConfig& config, std::optional<int> workers = std::nullopt);

/// Reference implementation. `trial_order`, when given, is the order in which
/// trial indices are executed (a permutation of 0..trials-1).
ExperimentResult run_experiment_serial(const ExperimentConfig& config, std::span<const std::size_t> trial_order = {});

struct SweepPoint {
  double value;
  std::optional<ExperimentResult> result;
  std::string error;  // set when the point could not be configured or run
};

/// Runs the experiment once per value, substituting it at `param` (a dotted
/// path into the config JSON). Failed points are reported, not fatal.
std::vector<SweepPoint> sweep(const nlohmann::json& config_template, std::string_view param,
                              std::span<const double> values, std::optional<int> workers = std::nullopt);

}  // namespace safebandit
