// Policy-level baselines: each round solve max <w, reward index> subject to
// <w, risk index> <= alpha over the simplex, then play an arm drawn from w.
// The optimum of a one-constraint LP has support of size at most two, so
// enumerating all pairs is exact.

#include <stdexcept>

#include "policy_agents.hpp"
#include "safebandit/stats.hpp"

namespace safebandit {

std::optional<PairPolicy> pairwise_policy_value(std::span<const double> idx_reward, std::span<const double> idx_risk,
                                                double alpha, ArmIndex i, ArmIndex j) {
  if (i >= idx_reward.size() || j >= idx_reward.size() || idx_risk.size() != idx_reward.size())
    throw std::out_of_range("pairwise_policy_value: index out of range");
  const bool safe_i = idx_risk[i] <= alpha;
  const bool safe_j = idx_risk[j] <= alpha;
  if (!safe_i && !safe_j) return std::nullopt;
  if (safe_i && safe_j) {
    if (idx_reward[j] > idx_reward[i]) return PairPolicy{idx_reward[j], 0.0, 1.0};
    return PairPolicy{idx_reward[i], 1.0, 0.0};
  }
  const ArmIndex s = safe_i ? i : j;
  const ArmIndex u = safe_i ? j : i;
  double w_s = 1.0;
  double w_u = 0.0;
  if (idx_reward[u] > idx_reward[s]) {
    // Put the slack alpha - risk_s on the unsafe coordinate; the constraint binds.
    w_u = (alpha - idx_risk[s]) / (idx_risk[u] - idx_risk[s]);
    w_s = 1.0 - w_u;
  }
  const double value = w_s * idx_reward[s] + w_u * idx_reward[u];
  return safe_i ? PairPolicy{value, w_s, w_u} : PairPolicy{value, w_u, w_s};
}

namespace detail {

namespace {

class PolicyAgent final : public Agent {
public:
  using Agent::Agent;

protected:
  ArmIndex select(long long t) override {
    const double gamma = exploration_budget(spec_.gamma_schedule, t);
    const int rounds = bisection_rounds(t);
    const bool pessimistic = spec_.algorithm == Algorithm::pess;
    auto& reward = scratch_a_;
    auto& risk = scratch_b_;
    const std::size_t K = stats_.size();
    for (ArmIndex k = 0; k < K; ++k) {
      reward[k] = klucb_reward_index(stats_[k], gamma, rounds);
      if (pessimistic)
        risk[k] = spec_.known_safe_arm == k ? 0.0 : klucb_pessimistic_safety_index(stats_[k], gamma, rounds);
      else
        risk[k] = klucb_safety_index(stats_[k], gamma, rounds);
      permissible_[k] = risk[k] <= alpha_;
    }

    std::optional<PairPolicy> best;
    ArmIndex best_i = 0;
    ArmIndex best_j = 0;
    for (ArmIndex i = 0; i < K; ++i) {
      for (ArmIndex j = i + 1; j < K; ++j) {
        const auto p = pairwise_policy_value(reward, risk, alpha_, i, j);
        if (p && (!best || p->value > best->value)) {
          best = p;
          best_i = i;
          best_j = j;
        }
      }
    }
    if (!best) return argmin(risk);
    if (best->weight_i >= 1.0) return best_i;
    if (best->weight_j >= 1.0) return best_j;
    return rng_.uniform() < best->weight_i ? best_i : best_j;
  }
};

}  // namespace

std::unique_ptr<Agent> make_policy_agent(const AgentSpec& spec, std::size_t arm_count, double alpha,
                                         std::uint64_t seed) {
  if (spec.algorithm != Algorithm::bwcr && spec.algorithm != Algorithm::pess)
    throw std::invalid_argument("not a policy baseline");
  return std::make_unique<PolicyAgent>(spec, arm_count, alpha, seed);
}

}  // namespace detail

}  // namespace safebandit
