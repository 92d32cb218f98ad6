#include "safebandit/harness.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>

#include "safebandit/agents.hpp"
#include "safebandit/rng.hpp"

namespace safebandit {

namespace {

struct TrialOutcome {
  std::optional<TrialSeries> series;
  std::string error;
};

TrialOutcome run_guarded(const ExperimentConfig& config, const AgentSpec& spec, std::size_t trial) {
  try {
    return {run_trial(config, spec, trial), {}};
  } catch (const std::exception& e) {
    return {std::nullopt, e.what()};
  }
}

// outcomes are indexed [agent * trials + trial].
ExperimentResult collect(const ExperimentConfig& config, const std::vector<TrialOutcome>& outcomes) {
  ExperimentResult result;
  const auto trials = static_cast<std::size_t>(config.trials);
  for (std::size_t a = 0; a < config.agents.size(); ++a) {
    AgentResult ar{config.agents[a], {}, {}};
    std::vector<TrialSeries> done;
    for (std::size_t i = 0; i < trials; ++i) {
      const auto& o = outcomes[a * trials + i];
      if (o.series)
        done.push_back(*o.series);
      else
        ar.failures.push_back({i, o.error});
    }
    ar.aggregate = aggregate(done);
    result.agents.push_back(std::move(ar));
  }
  return result;
}

}  // namespace

std::size_t ExperimentResult::failed_trials() const {
  std::size_t n = 0;
  for (const auto& a : agents) n += a.failures.size();
  return n;
}

const AgentResult& ExperimentResult::for_agent(std::string_view id) const {
  for (const auto& a : agents)
    if (a.spec.id() == id) return a;
  throw std::out_of_range("no agent '" + std::string(id) + "' in result");
}

TrialSeeds trial_seeds(std::uint64_t base_seed, const AgentSpec& spec, std::size_t trial_index) {
  const auto id = spec.id();
  return {derive_seed(base_seed, id, trial_index, 0), derive_seed(base_seed, id, trial_index, 1),
          derive_seed(base_seed, id, trial_index, 2)};
}

TrialSeries run_trial(const ExperimentConfig& config, const AgentSpec& spec, std::size_t trial_index) {
  const auto& instance = config.instance;
  const std::size_t K = instance.arm_count();
  try {
    const auto truth = ground_truth(instance);
    const auto seeds = trial_seeds(config.base_seed, spec, trial_index);
    RngStream env_rng(seeds.environment);
    RngStream bin_rng(seeds.binarize);
    auto agent = make_agent(spec, K, instance.alpha(), seeds.agent);
    const bool binarized = instance.family() == Family::general_bounded && is_bayesian(spec.algorithm);

    std::vector<double> step_regret(K);
    std::vector<double> step_violation(K);
    for (ArmIndex k = 0; k < K; ++k) {
      step_regret[k] = regret_increment(truth, k);
      step_violation[k] = truth.safety[k];
    }

    TrialSeries series;
    const std::size_t rows = static_cast<std::size_t>(config.horizon / config.record_stride) + 1;
    series.t.reserve(rows);
    series.regret.reserve(rows);
    series.unsafe.reserve(rows);
    series.violation.reserve(rows);

    double regret = 0.0;
    double violation = 0.0;
    long long unsafe = 0;
    std::vector<long long> pulls(K, 0);
    for (long long t = 1; t <= config.horizon; ++t) {
      const ArmIndex arm = agent->act(t);
      Observation obs = instance.sample(arm, env_rng);
      if (binarized) obs = binarize(obs, bin_rng);
      agent->observe(arm, obs.reward, obs.risk);

      regret += step_regret[arm];
      violation += step_violation[arm];
      if (truth.safety[arm] > 0.0) ++unsafe;
      ++pulls[arm];
      if (t % config.record_stride == 0 || t == config.horizon) {
        series.t.push_back(t);
        series.regret.push_back(regret);
        series.unsafe.push_back(unsafe);
        series.violation.push_back(violation);
      }
    }
    series.final_pulls = std::move(pulls);
    return series;
  } catch (const std::exception& e) {
    throw TrialError("agent '" + spec.id() + "' trial " + std::to_string(trial_index) + ": " + e.what());
  }
}

int resolve_workers(std::optional<int> flag, const ExperimentConfig& config) {
  if (flag && *flag >= 1) return *flag;
  if (const char* env = std::getenv("SAFEBANDIT_WORKERS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  if (config.workers) return *config.workers;
  return omp_get_max_threads();
}

ExperimentResult run_experiment(const ExperimentConfig& config, std::optional<int> workers) {
  config.validate();
  const int threads = resolve_workers(workers, config);
  const auto trials = static_cast<std::size_t>(config.trials);
  const long long jobs = static_cast<long long>(config.agents.size() * trials);
  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(jobs));

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (long long j = 0; j < jobs; ++j) {
    const auto job = static_cast<std::size_t>(j);
    outcomes[job] = run_guarded(config, config.agents[job / trials], job % trials);
  }
  return collect(config, outcomes);
}

ExperimentResult run_experiment_serial(const ExperimentConfig& config, std::span<const std::size_t> trial_order) {
  config.validate();
  const auto trials = static_cast<std::size_t>(config.trials);
  std::vector<std::size_t> order(trial_order.begin(), trial_order.end());
  if (order.empty()) {
    order.resize(trials);
    std::iota(order.begin(), order.end(), std::size_t{0});
  }
  std::vector<std::size_t> check = order;
  std::sort(check.begin(), check.end());
  for (std::size_t i = 0; i < check.size(); ++i)
    if (check.size() != trials || check[i] != i) throw std::invalid_argument("trial_order must permute 0..trials-1");

  std::vector<TrialOutcome> outcomes(config.agents.size() * trials);
  for (std::size_t a = 0; a < config.agents.size(); ++a)
    for (std::size_t i : order) outcomes[a * trials + i] = run_guarded(config, config.agents[a], i);
  return collect(config, outcomes);
}

std::vector<SweepPoint> sweep(const nlohmann::json& config_template, std::string_view param,
                              std::span<const double> values, std::optional<int> workers) {
  if (values.empty()) throw ConfigError("sweep needs at least one value");
  std::vector<SweepPoint> points;
  for (double v : values) {
    SweepPoint p{v, std::nullopt, {}};
    try {
      auto doc = config_template;
      if (std::floor(v) == v && std::fabs(v) < 1e15)
        set_path(doc, param, static_cast<long long>(v));
      else
        set_path(doc, param, v);
      const auto cfg = parse_config(doc);
      p.result = run_experiment(cfg, workers);
    } catch (const std::exception& e) {
      p.error = e.what();
    }
    points.push_back(std::move(p));
  }
  return points;
}

}  // namespace safebandit
