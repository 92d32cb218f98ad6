#pragma once

// Decision policies for safe bandits. Arms are 0-based throughout.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "safebandit/instance.hpp"
#include "safebandit/rng.hpp"

namespace safebandit {

enum class Algorithm { docb, topsi, tsbu, naive_ts, naive_ts_slack, bwcr, pess };
enum class GammaSchedule { theoretical, practical };
enum class DeltaSchedule { theoretical, practical };

std::string_view to_string(Algorithm a);
std::string_view to_string(GammaSchedule g);
std::string_view to_string(DeltaSchedule d);
Algorithm parse_algorithm(std::string_view name);
GammaSchedule parse_gamma_schedule(std::string_view name);
DeltaSchedule parse_delta_schedule(std::string_view name);
std::span<const Algorithm> all_algorithms();

/// Agents whose indices assume Bernoulli observations; bounded observations
/// are binarized before reaching them.
bool is_bayesian(Algorithm a);

struct AgentSpec {
  Algorithm algorithm = Algorithm::docb;
  GammaSchedule gamma_schedule = GammaSchedule::practical;
  DeltaSchedule delta_schedule = DeltaSchedule::practical;
  double slack_constant = 0.0;
  std::optional<ArmIndex> known_safe_arm;
  std::string label;  // empty: derived from the fields

  /// Stable identifier; keys seed derivation and output file names.
  std::string id() const;

  /// Throws std::invalid_argument when a required parameter is missing.
  void validate(std::size_t arm_count) const;
};

struct ArmStatistics {
  long long n = 0;
  double sum_r = 0.0;
  double sum_s = 0.0;

  double mean_reward() const { return sum_r / static_cast<double>(n); }
  double mean_risk() const { return sum_s / static_cast<double>(n); }
};

/// KL-UCB exploration budget gamma_t.
/// theoretical: log(t (log t)^3) with t clamped to >= 3; practical: log t.
double exploration_budget(GammaSchedule schedule, long long t);

/// BayesUCB quantile level delta_t^k.
/// theoretical: min(alpha/2, 1/(sqrt(8 n) t)); practical: min(alpha/2, 1/(t + 1)).
double quantile_level(DeltaSchedule schedule, double alpha, long long t, long long n);

/// Lower KL confidence bound on the risk mean; 0 for unplayed arms.
double klucb_safety_index(const ArmStatistics& s, double gamma, std::optional<int> rounds = std::nullopt);

/// Upper KL confidence bound on the reward mean; 1 for unplayed arms.
double klucb_reward_index(const ArmStatistics& s, double gamma, std::optional<int> rounds = std::nullopt);

/// Upper KL confidence bound on the risk mean; 1 for unplayed arms.
double klucb_pessimistic_safety_index(const ArmStatistics& s, double gamma,
                                      std::optional<int> rounds = std::nullopt);

/// delta-quantile of Beta(S, N - S + 1), or 0 when S = 0.
double bayes_safety_index(const ArmStatistics& s, double delta);

/// Whether bayes_safety_index(s, delta) <= alpha, decided as
/// I_alpha(S, N - S + 1) >= delta without solving for the quantile.
bool bayes_permissible(const ArmStatistics& s, double delta, double alpha);

struct PairPolicy {
  double value;
  double weight_i;
  double weight_j;
};

/// Best distribution over {i, j} maximising expected reward index subject to
/// expected risk index <= alpha. nullopt when neither arm's risk index is
/// within alpha (no admissible mix).
std::optional<PairPolicy> pairwise_policy_value(std::span<const double> idx_reward, std::span<const double> idx_risk,
                                                double alpha, ArmIndex i, ArmIndex j);

/// Lowest-index argmax of score over arms whose mask bit is set; nullopt if
/// the mask is empty.
std::optional<ArmIndex> permissible_argmax(std::span<const double> score, const std::vector<bool>& mask);

/// Permissible set of docb, topsi or tsbu at round t given the statistics
/// accumulated over rounds 1..t-1. Deterministic: no randomness enters.
std::vector<bool> permissible_set(const AgentSpec& spec, std::span<const ArmStatistics> stats, double alpha,
                                  long long t);

/// One bandit policy. act() and observe() must alternate, starting at t = 1.
class Agent {
public:
  Agent(AgentSpec spec, std::size_t arm_count, double alpha, std::uint64_t seed);
  virtual ~Agent() = default;
  Agent(const Agent&) = delete;
  Agent& operator=(const Agent&) = delete;

  ArmIndex act(long long t);
  void observe(ArmIndex arm, double reward, double risk);

  const AgentSpec& spec() const { return spec_; }
  std::size_t arm_count() const { return stats_.size(); }
  double alpha() const { return alpha_; }
  std::span<const ArmStatistics> statistics() const { return stats_; }
  long long rounds_observed() const { return rounds_observed_; }

  /// Permissible set computed at the last act(); all-true during forced
  /// round-robin. Policy baselines report arms with risk index <= alpha.
  const std::vector<bool>& last_permissible() const { return permissible_; }

protected:
  virtual ArmIndex select(long long t) = 0;

  static ArmIndex argmin(std::span<const double> score);

  AgentSpec spec_;
  double alpha_;
  RngStream rng_;
  std::vector<ArmStatistics> stats_;
  std::vector<bool> permissible_;
  std::vector<double> scratch_a_;
  std::vector<double> scratch_b_;

private:
  long long rounds_observed_ = 0;
  std::optional<ArmIndex> pending_;
};

std::unique_ptr<Agent> make_agent(const AgentSpec& spec, std::size_t arm_count, double alpha, std::uint64_t seed);

}  // namespace safebandit
