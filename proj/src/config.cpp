#include "safebandit/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace safebandit {

using nlohmann::json;

namespace {

struct PresetMeans {
  std::vector<double> mu;
  std::vector<double> nu;
  double alpha;
};

PresetMeans preset_means(const std::string& name, const json& j) {
  auto gap_index = [&]() {
    if (!j.contains("i")) throw ConfigError("preset '" + name + "' requires \"i\"");
    return j.at("i").get<double>();
  };
  if (name == "drug-trial")
    return {{0.360, 0.340, 0.469, 0.465, 0.537}, {0.160, 0.259, 0.184, 0.209, 0.293}, 0.21};
  if (name == "two-arm") return {{0.5, 1.0}, {0.0, 1.0}, 0.5};
  if (name == "policy-multi") return {{0.0, 0.4, 0.5, 0.6}, {0.0, 0.4, 0.5, 0.6}, 0.5};
  if (name == "policy-single") return {{0.0, 0.4, 0.6, 0.6}, {0.0, 0.4, 0.5, 0.6}, 0.5};
  if (name == "naive-ts") return {{0.3, 0.5, 0.7}, {0.3, 0.5, 0.7}, 0.5};
  if (name == "bayesucb-probe") return {{0.4, 0.5, 0.6}, {0.4, 0.5, 0.6}, 0.5};
  if (name == "gap-large") {
    const double i = gap_index();
    return {{0.5, 0.5 - i / 25.0, 0.5 + i / 25.0}, {0.5, 0.5 - i / 25.0, 0.5 + i / 25.0}, 0.5};
  }
  if (name == "gap-small") {
    const double i = gap_index();
    return {{0.5, 0.5 - i / 25.0, 0.5 + i / 250.0}, {0.5, 0.5 + i / 250.0, 0.5 + i / 25.0}, 0.5};
  }
  throw ConfigError("unknown instance preset '" + name + "'");
}

MarginalLaw parse_marginal(const json& j) {
  if (j.is_number()) return MarginalLaw::bernoulli(j.get<double>());
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "bernoulli") return MarginalLaw::bernoulli(j.at("p").get<double>());
  if (kind == "point") return MarginalLaw::point(j.at("value").get<double>());
  if (kind == "uniform") return MarginalLaw::uniform(j.at("lo").get<double>(), j.at("hi").get<double>());
  throw ConfigError("unknown marginal law kind '" + kind + "'");
}

Family parse_family(const std::string& s) {
  if (s == "bernoulli-independent") return Family::bernoulli_independent;
  if (s == "general-bounded") return Family::general_bounded;
  throw ConfigError("unknown family '" + s + "'");
}

// Wraps library/validation exceptions so callers see one error type.
template <typename F>
auto as_config_error(const std::string& where, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

}  // namespace

SafeBanditInstance parse_instance(const json& j) {
  return as_config_error("instance", [&] {
    if (!j.is_object()) throw ConfigError("instance must be an object");
    const Family family = parse_family(j.value("family", std::string("bernoulli-independent")));
    if (j.contains("preset")) {
      auto means = preset_means(j.at("preset").get<std::string>(), j);
      const double alpha = j.value("alpha", means.alpha);
      return SafeBanditInstance::bernoulli(means.mu, means.nu, alpha);
    }
    if (!j.contains("alpha")) throw ConfigError("instance requires \"alpha\"");
    const double alpha = j.at("alpha").get<double>();
    if (j.contains("arms")) {
      std::vector<ArmLaw> arms;
      for (const auto& a : j.at("arms")) arms.push_back({parse_marginal(a.at("reward")), parse_marginal(a.at("risk"))});
      return SafeBanditInstance(alpha, std::move(arms), family);
    }
    const auto mu = j.at("mu").get<std::vector<double>>();
    const auto nu = j.at("nu").get<std::vector<double>>();
    if (family != Family::bernoulli_independent) throw ConfigError("mu/nu lists describe Bernoulli arms only");
    return SafeBanditInstance::bernoulli(mu, nu, alpha);
  });
}

AgentSpec parse_agent(const json& j) {
  return as_config_error("agent", [&] {
    AgentSpec spec;
    if (j.is_string()) {
      spec.algorithm = parse_algorithm(j.get<std::string>());
      return spec;
    }
    if (!j.is_object()) throw ConfigError("agent must be a name or an object");
    static const std::set<std::string> known{"algorithm",      "gamma_schedule", "delta_schedule",
                                             "slack_constant", "known_safe_arm", "label"};
    for (const auto& [key, _] : j.items())
      if (!known.contains(key)) throw ConfigError("unknown agent field '" + key + "'");
    spec.algorithm = parse_algorithm(j.at("algorithm").get<std::string>());
    if (j.contains("gamma_schedule")) spec.gamma_schedule = parse_gamma_schedule(j.at("gamma_schedule").get<std::string>());
    if (j.contains("delta_schedule")) spec.delta_schedule = parse_delta_schedule(j.at("delta_schedule").get<std::string>());
    if (j.contains("slack_constant")) spec.slack_constant = j.at("slack_constant").get<double>();
    else if (spec.algorithm == Algorithm::naive_ts_slack) throw ConfigError("naive-ts-slack requires slack_constant");
    if (j.contains("known_safe_arm")) spec.known_safe_arm = j.at("known_safe_arm").get<ArmIndex>();
    spec.label = j.value("label", std::string());
    return spec;
  });
}

void ExperimentConfig::validate() const {
  if (horizon < 1) throw ConfigError("horizon must be >= 1");
  if (trials < 1) throw ConfigError("trials must be >= 1");
  if (record_stride < 1) throw ConfigError("record_stride must be >= 1");
  if (workers && *workers < 1) throw ConfigError("workers must be >= 1");
  if (agents.empty()) throw ConfigError("at least one agent is required");
  std::set<std::string> ids;
  for (const auto& a : agents) {
    as_config_error("agent '" + a.id() + "'", [&] { a.validate(instance.arm_count()); return 0; });
    if (!ids.insert(a.id()).second) throw ConfigError("duplicate agent id '" + a.id() + "'; set distinct labels");
  }
  if (instance.arm_count() < 2) throw ConfigError("agents need at least two arms");
}

ExperimentConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> known{"instance", "horizon", "trials", "agents", "base_seed", "record_stride", "workers"};
  for (const auto& [key, _] : j.items())
    if (!known.contains(key)) throw ConfigError("unknown config field '" + key + "'");
  if (!j.contains("instance")) throw ConfigError("config requires \"instance\"");
  if (!j.contains("agents") || !j.at("agents").is_array()) throw ConfigError("config requires an \"agents\" array");

  ExperimentConfig cfg(parse_instance(j.at("instance")));
  as_config_error("config", [&] {
    cfg.horizon = j.value("horizon", 1LL);
    cfg.trials = j.value("trials", 1);
    cfg.base_seed = j.value("base_seed", std::uint64_t{0});
    cfg.record_stride = j.value("record_stride", 50LL);
    if (j.contains("workers")) cfg.workers = j.at("workers").get<int>();
    return 0;
  });
  for (const auto& a : j.at("agents")) cfg.agents.push_back(parse_agent(a));
  cfg.validate();
  return cfg;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("malformed JSON in '" + path + "': " + e.what());
  }
}

ExperimentConfig load_config(const std::string& path) { return parse_config(load_json(path)); }

void set_path(json& doc, std::string_view dotted_path, const json& value) {
  json* node = &doc;
  std::string_view rest = dotted_path;
  while (true) {
    const auto dot = rest.find('.');
    const std::string key(rest.substr(0, dot));
    if (key.empty()) throw ConfigError("empty component in path '" + std::string(dotted_path) + "'");
    json* next;
    if (node->is_array()) {
      std::size_t idx;
      try {
        idx = std::stoul(key);
      } catch (const std::exception&) {
        throw ConfigError("path component '" + key + "' must index an array");
      }
      if (idx >= node->size()) throw ConfigError("path index " + key + " out of range");
      next = &(*node)[idx];
    } else {
      if (node->is_string()) *node = json{{"algorithm", node->get<std::string>()}};
      if (!node->is_object() && !node->is_null()) throw ConfigError("cannot descend into '" + key + "'");
      next = &(*node)[key];
    }
    if (dot == std::string_view::npos) {
      *next = value;
      return;
    }
    node = next;
    rest = rest.substr(dot + 1);
  }
}

}  // namespace safebandit
