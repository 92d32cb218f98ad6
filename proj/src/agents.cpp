#include "safebandit/agents.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "policy_agents.hpp"
#include "safebandit/stats.hpp"

namespace safebandit {

namespace {

constexpr std::array kAlgorithms{Algorithm::docb,           Algorithm::topsi, Algorithm::tsbu, Algorithm::naive_ts,
                                 Algorithm::naive_ts_slack, Algorithm::bwcr,  Algorithm::pess};

double budget_per_sample(double gamma, long long n) {
  return n == 0 ? kInf : gamma / static_cast<double>(n);
}

bool forced_round_robin(Algorithm a) {
  return a == Algorithm::docb || a == Algorithm::topsi || a == Algorithm::bwcr || a == Algorithm::pess;
}

// Thompson draw from the reward posterior Beta(R + 1, N - R + 1).
double reward_sample(const ArmStatistics& s, RngStream& rng) {
  return beta_sample(BetaParams(s.sum_r + 1.0, static_cast<double>(s.n) - s.sum_r + 1.0), rng);
}

// L <= alpha via the KL lower bound. When nu_hat <= alpha membership is
// certain (the bound never exceeds nu_hat) and the solve is skipped; `lower`
// then holds nu_hat, which only matters for the empty-set fallback.
bool klucb_membership(const ArmStatistics& s, double gamma, int rounds, double alpha, double& lower) {
  if (s.n == 0) {
    lower = 0.0;
    return true;
  }
  const double nu_hat = std::min(1.0, s.mean_risk());
  if (nu_hat <= alpha) {
    lower = nu_hat;
    return true;
  }
  lower = klucb_safety_index(s, gamma, rounds);
  return lower <= alpha;
}

class DocbAgent final : public Agent {
public:
  using Agent::Agent;

protected:
  ArmIndex select(long long t) override {
    const double gamma = exploration_budget(spec_.gamma_schedule, t);
    const int rounds = bisection_rounds(t);
    auto& lower = scratch_a_;
    auto& upper = scratch_b_;
    for (ArmIndex k = 0; k < stats_.size(); ++k) {
      permissible_[k] = klucb_membership(stats_[k], gamma, rounds, alpha_, lower[k]);
      upper[k] = permissible_[k] ? klucb_reward_index(stats_[k], gamma, rounds) : 0.0;
    }
    if (auto best = permissible_argmax(upper, permissible_)) return *best;
    return argmin(lower);
  }
};

class TopsiAgent final : public Agent {
public:
  using Agent::Agent;

protected:
  ArmIndex select(long long t) override {
    const double gamma = exploration_budget(spec_.gamma_schedule, t);
    const int rounds = bisection_rounds(t);
    auto& lower = scratch_a_;
    auto& rho = scratch_b_;
    for (ArmIndex k = 0; k < stats_.size(); ++k) permissible_[k] = klucb_membership(stats_[k], gamma, rounds, alpha_, lower[k]);
    for (ArmIndex k = 0; k < stats_.size(); ++k) rho[k] = permissible_[k] ? reward_sample(stats_[k], rng_) : 0.0;
    if (auto best = permissible_argmax(rho, permissible_)) return *best;
    return argmin(lower);
  }
};

class TsbuAgent final : public Agent {
public:
  TsbuAgent(AgentSpec spec, std::size_t arm_count, double alpha, std::uint64_t seed)
      : Agent(std::move(spec), arm_count, alpha, seed), cdf_at_alpha_(arm_count, -1.0), cached_n_(arm_count, -1) {}

protected:
  ArmIndex select(long long t) override {
    auto& rho = scratch_b_;
    // I_alpha(S, N - S + 1) only moves when the arm is observed; cache it.
    for (ArmIndex k = 0; k < stats_.size(); ++k) {
      const auto& s = stats_[k];
      if (s.sum_s == 0.0) {
        permissible_[k] = true;
        continue;
      }
      if (cached_n_[k] != s.n) {
        cdf_at_alpha_[k] = beta_cdf(BetaParams(s.sum_s, static_cast<double>(s.n) - s.sum_s + 1.0), alpha_);
        cached_n_[k] = s.n;
      }
      permissible_[k] = cdf_at_alpha_[k] >= quantile_level(spec_.delta_schedule, alpha_, t, s.n);
    }
    for (ArmIndex k = 0; k < stats_.size(); ++k) rho[k] = permissible_[k] ? reward_sample(stats_[k], rng_) : 0.0;
    if (auto best = permissible_argmax(rho, permissible_)) return *best;

    auto& lower = scratch_a_;
    for (ArmIndex k = 0; k < stats_.size(); ++k)
      lower[k] = bayes_safety_index(stats_[k], quantile_level(spec_.delta_schedule, alpha_, t, stats_[k].n));
    return argmin(lower);
  }

private:
  std::vector<double> cdf_at_alpha_;
  std::vector<long long> cached_n_;
};

class NaiveTsAgent final : public Agent {
public:
  using Agent::Agent;

protected:
  ArmIndex select(long long t) override {
    auto& theta = scratch_a_;
    auto& rho = scratch_b_;
    const bool slack = spec_.algorithm == Algorithm::naive_ts_slack;
    const double spread = slack ? spec_.slack_constant * std::sqrt(std::log(static_cast<double>(t))) : 0.0;
    for (ArmIndex k = 0; k < stats_.size(); ++k) {
      const auto& s = stats_[k];
      const BetaParams posterior(s.sum_s + 1.0, static_cast<double>(s.n) - s.sum_s + 1.0);
      theta[k] = beta_sample(posterior, rng_);
      const double threshold = slack ? alpha_ + spread * std::sqrt(posterior.variance()) : alpha_;
      permissible_[k] = theta[k] <= threshold;
    }
    for (ArmIndex k = 0; k < stats_.size(); ++k) rho[k] = permissible_[k] ? reward_sample(stats_[k], rng_) : 0.0;
    if (auto best = permissible_argmax(rho, permissible_)) return *best;
    return argmin(theta);
  }
};

}  // namespace

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::docb: return "docb";
    case Algorithm::topsi: return "topsi";
    case Algorithm::tsbu: return "tsbu";
    case Algorithm::naive_ts: return "naive-ts";
    case Algorithm::naive_ts_slack: return "naive-ts-slack";
    case Algorithm::bwcr: return "bwcr";
    case Algorithm::pess: return "pess";
  }
  return "?";
}

std::string_view to_string(GammaSchedule g) { return g == GammaSchedule::theoretical ? "theoretical" : "practical"; }
std::string_view to_string(DeltaSchedule d) { return d == DeltaSchedule::theoretical ? "theoretical" : "practical"; }

Algorithm parse_algorithm(std::string_view name) {
  for (auto a : kAlgorithms)
    if (to_string(a) == name) return a;
  throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

GammaSchedule parse_gamma_schedule(std::string_view name) {
  if (name == "theoretical") return GammaSchedule::theoretical;
  if (name == "practical") return GammaSchedule::practical;
  throw std::invalid_argument("unknown gamma schedule '" + std::string(name) + "'");
}

DeltaSchedule parse_delta_schedule(std::string_view name) {
  if (name == "theoretical") return DeltaSchedule::theoretical;
  if (name == "practical") return DeltaSchedule::practical;
  throw std::invalid_argument("unknown delta schedule '" + std::string(name) + "'");
}

std::span<const Algorithm> all_algorithms() { return kAlgorithms; }

bool is_bayesian(Algorithm a) {
  return a == Algorithm::topsi || a == Algorithm::tsbu || a == Algorithm::naive_ts || a == Algorithm::naive_ts_slack;
}

std::string AgentSpec::id() const {
  if (!label.empty()) return label;
  std::string out(to_string(algorithm));
  const bool uses_gamma = algorithm == Algorithm::docb || algorithm == Algorithm::topsi ||
                          algorithm == Algorithm::bwcr || algorithm == Algorithm::pess;
  if (uses_gamma && gamma_schedule == GammaSchedule::theoretical) out += "-gamma-theoretical";
  if (algorithm == Algorithm::tsbu && delta_schedule == DeltaSchedule::theoretical) out += "-delta-theoretical";
  if (algorithm == Algorithm::naive_ts_slack) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "-C%g", slack_constant);
    out += buf;
  }
  return out;
}

void AgentSpec::validate(std::size_t arm_count) const {
  if (algorithm == Algorithm::pess) {
    if (!known_safe_arm) throw std::invalid_argument("pess requires known_safe_arm");
    if (*known_safe_arm >= arm_count) throw std::invalid_argument("known_safe_arm out of range");
  }
  if (algorithm == Algorithm::naive_ts_slack && !(slack_constant >= 0.0 && std::isfinite(slack_constant)))
    throw std::invalid_argument("naive-ts-slack requires a finite non-negative slack_constant");
}

double exploration_budget(GammaSchedule schedule, long long t) {
  if (t < 1) throw std::invalid_argument("round index starts at 1");
  if (schedule == GammaSchedule::practical) return std::log(static_cast<double>(t));
  const double tc = static_cast<double>(t < 3 ? 3 : t);
  const double lt = std::log(tc);
  return std::log(tc * lt * lt * lt);
}

double quantile_level(DeltaSchedule schedule, double alpha, long long t, long long n) {
  const double td = static_cast<double>(t);
  const double raw = schedule == DeltaSchedule::practical
                         ? 1.0 / (td + 1.0)
                         : 1.0 / (std::sqrt(8.0 * static_cast<double>(n < 1 ? 1 : n)) * td);
  return std::min(0.5 * alpha, raw);
}

double klucb_safety_index(const ArmStatistics& s, double gamma, std::optional<int> rounds) {
  if (s.n == 0) return 0.0;
  return kl_ucb_invert_lower(std::min(1.0, s.mean_risk()), budget_per_sample(gamma, s.n), rounds);
}

double klucb_reward_index(const ArmStatistics& s, double gamma, std::optional<int> rounds) {
  if (s.n == 0) return 1.0;
  return kl_ucb_invert_upper(std::min(1.0, s.mean_reward()), budget_per_sample(gamma, s.n), rounds);
}

double klucb_pessimistic_safety_index(const ArmStatistics& s, double gamma, std::optional<int> rounds) {
  if (s.n == 0) return 1.0;
  return kl_ucb_invert_upper(std::min(1.0, s.mean_risk()), budget_per_sample(gamma, s.n), rounds);
}

double bayes_safety_index(const ArmStatistics& s, double delta) {
  if (s.sum_s == 0.0 || delta <= 0.0) return 0.0;
  return beta_quantile(BetaParams(s.sum_s, static_cast<double>(s.n) - s.sum_s + 1.0), delta);
}

bool bayes_permissible(const ArmStatistics& s, double delta, double alpha) {
  if (s.sum_s == 0.0) return true;
  return beta_cdf(BetaParams(s.sum_s, static_cast<double>(s.n) - s.sum_s + 1.0), alpha) >= delta;
}

Agent::Agent(AgentSpec spec, std::size_t arm_count, double alpha, std::uint64_t seed)
    : spec_(std::move(spec)),
      alpha_(alpha),
      rng_(seed),
      stats_(arm_count),
      permissible_(arm_count, true),
      scratch_a_(arm_count, 0.0),
      scratch_b_(arm_count, 0.0) {
  if (arm_count < 2) throw std::invalid_argument("agents need at least two arms");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in [0, 1]");
  spec_.validate(arm_count);
}

ArmIndex Agent::act(long long t) {
  if (pending_) throw std::logic_error("act() called twice without observe()");
  if (t != rounds_observed_ + 1)
    throw std::logic_error("act(t) expects t = " + std::to_string(rounds_observed_ + 1) + ", got " + std::to_string(t));
  ArmIndex arm;
  if (forced_round_robin(spec_.algorithm) && t <= static_cast<long long>(stats_.size())) {
    permissible_.assign(stats_.size(), true);
    arm = static_cast<ArmIndex>(t - 1);
  } else {
    arm = select(t);
  }
  pending_ = arm;
  return arm;
}

void Agent::observe(ArmIndex arm, double reward, double risk) {
  if (!pending_) throw std::logic_error("observe() without a preceding act()");
  if (arm != *pending_)
    throw std::logic_error("observe() for arm " + std::to_string(arm) + " but act() chose " + std::to_string(*pending_));
  if (!(reward >= 0.0 && reward <= 1.0 && risk >= 0.0 && risk <= 1.0))
    throw std::invalid_argument("observations must lie in [0, 1]");
  auto& s = stats_[arm];
  s.n += 1;
  s.sum_r += reward;
  s.sum_s += risk;
  ++rounds_observed_;
  pending_.reset();
}

std::optional<ArmIndex> permissible_argmax(std::span<const double> score, const std::vector<bool>& mask) {
  std::optional<ArmIndex> best;
  for (ArmIndex k = 0; k < score.size(); ++k) {
    if (!mask[k]) continue;
    if (!best || score[k] > score[*best]) best = k;
  }
  return best;
}

ArmIndex Agent::argmin(std::span<const double> score) {
  ArmIndex best = 0;
  for (ArmIndex k = 1; k < score.size(); ++k)
    if (score[k] < score[best]) best = k;
  return best;
}

std::vector<bool> permissible_set(const AgentSpec& spec, std::span<const ArmStatistics> stats, double alpha,
                                  long long t) {
  std::vector<bool> out(stats.size(), true);
  switch (spec.algorithm) {
    case Algorithm::docb:
    case Algorithm::topsi: {
      if (t <= static_cast<long long>(stats.size())) return out;
      const double gamma = exploration_budget(spec.gamma_schedule, t);
      const int rounds = bisection_rounds(t);
      double lower;
      for (ArmIndex k = 0; k < stats.size(); ++k) out[k] = klucb_membership(stats[k], gamma, rounds, alpha, lower);
      return out;
    }
    case Algorithm::tsbu:
      for (ArmIndex k = 0; k < stats.size(); ++k)
        out[k] = bayes_permissible(stats[k], quantile_level(spec.delta_schedule, alpha, t, stats[k].n), alpha);
      return out;
    default:
      throw std::invalid_argument("permissible set of " + std::string(to_string(spec.algorithm)) +
                                  " depends on posterior samples");
  }
}

std::unique_ptr<Agent> make_agent(const AgentSpec& spec, std::size_t arm_count, double alpha, std::uint64_t seed) {
  switch (spec.algorithm) {
    case Algorithm::docb: return std::make_unique<DocbAgent>(spec, arm_count, alpha, seed);
    case Algorithm::topsi: return std::make_unique<TopsiAgent>(spec, arm_count, alpha, seed);
    case Algorithm::tsbu: return std::make_unique<TsbuAgent>(spec, arm_count, alpha, seed);
    case Algorithm::naive_ts:
    case Algorithm::naive_ts_slack: return std::make_unique<NaiveTsAgent>(spec, arm_count, alpha, seed);
    case Algorithm::bwcr:
    case Algorithm::pess: return detail::make_policy_agent(spec, arm_count, alpha, seed);
  }
  throw std::invalid_argument("unhandled algorithm");
}

}  // namespace safebandit
