// safebandit: run safe-bandit experiments, parameter sweeps and bound reports.
//
// Exit codes: 0 success, 1 configuration error, 2 runtime fault.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "safebandit/bounds.hpp"
#include "safebandit/config.hpp"
#include "safebandit/harness.hpp"
#include "safebandit/output.hpp"

namespace sb = safebandit;

namespace {

constexpr int kConfigError = 1;
constexpr int kRuntimeFault = 2;

std::vector<double> parse_values(const std::string& list) {
  std::vector<double> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    double v;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw sb::ConfigError("bad sweep value '" + item + "'");
    }
    if (used != item.size()) throw sb::ConfigError("bad sweep value '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw sb::ConfigError("--values is empty");
  return out;
}

void report_failures(const sb::ExperimentResult& r) {
  for (const auto& a : r.agents) {
    if (a.failures.empty()) continue;
    std::cerr << a.spec.id() << ": " << a.failures.size() << " trial(s) failed and were excluded\n";
    for (const auto& f : a.failures) std::cerr << "  " << f.message << '\n';
  }
}

int cmd_run(const std::string& config_path, const std::string& out_dir, std::optional<int> workers) {
  const auto cfg = sb::load_config(config_path);
  const auto result = sb::run_experiment(cfg, workers);
  sb::write_experiment(out_dir, result);
  for (const auto& a : result.agents) {
    if (a.aggregate.trials() == 0) continue;
    std::cout << a.spec.id() << ": trials=" << a.aggregate.trials()
              << " final regret mean=" << a.aggregate.final_regret_summary().mean
              << " final unsafe mean=" << a.aggregate.final_unsafe_summary().mean << '\n';
  }
  report_failures(result);
  return result.failed_trials() > 0 ? kRuntimeFault : 0;
}

int cmd_sweep(const std::string& config_path, const std::string& param, const std::string& values,
              const std::string& out_dir, std::optional<int> workers) {
  const auto doc = sb::load_json(config_path);
  const auto grid = parse_values(values);
  const auto points = sb::sweep(doc, param, grid, workers);
  std::filesystem::create_directories(out_dir);
  {
    std::ofstream csv(std::filesystem::path(out_dir) / "sweep.csv");
    sb::write_sweep_csv(csv, points);
  }
  bool failed = false;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    if (!p.error.empty()) {
      std::cerr << param << "=" << p.value << ": " << p.error << '\n';
      failed = true;
      continue;
    }
    sb::write_experiment(std::filesystem::path(out_dir) / ("point_" + std::to_string(i)), *p.result);
    report_failures(*p.result);
    failed = failed || p.result->failed_trials() > 0;
  }
  return failed ? kRuntimeFault : 0;
}

int cmd_bounds(const std::string& config_path, std::optional<double> horizon) {
  const auto doc = sb::load_json(config_path);
  if (!doc.contains("instance")) throw sb::ConfigError("config requires \"instance\"");
  const auto instance = sb::parse_instance(doc.at("instance"));
  if (!horizon && doc.contains("horizon")) horizon = doc.at("horizon").get<double>();
  std::cout << sb::to_json(sb::bound_report(instance, horizon)).dump(2) << '\n';
  return 0;
}

int cmd_list() {
  for (auto a : sb::all_algorithms()) std::cout << sb::to_string(a) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Safe multi-armed bandit simulation laboratory"};
  app.require_subcommand(1);

  std::string config_path, out_dir, param, values;
  std::optional<int> workers;
  std::optional<double> horizon;

  auto* run = app.add_subcommand("run", "Run every agent in a config and write aggregate CSVs");
  run->add_option("--config", config_path, "Experiment config (JSON)")->required();
  run->add_option("--out", out_dir, "Output directory")->required();
  run->add_option("--workers", workers, "Worker threads (overrides SAFEBANDIT_WORKERS)");

  auto* sw = app.add_subcommand("sweep", "Repeat an experiment over a grid of one config parameter");
  sw->add_option("--config", config_path, "Template config (JSON)")->required();
  sw->add_option("--param", param, "Dotted config path, e.g. instance.alpha")->required();
  sw->add_option("--values", values, "Comma-separated values")->required();
  sw->add_option("--out", out_dir, "Output directory")->required();
  sw->add_option("--workers", workers, "Worker threads");

  auto* bounds = app.add_subcommand("bounds", "Print theoretical bound coefficients as JSON");
  bounds->add_option("--config", config_path, "Config whose instance is analysed")->required();
  bounds->add_option("--horizon", horizon, "Horizon T (defaults to the config's)");

  auto* list = app.add_subcommand("list-algorithms", "List agent names accepted in configs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kConfigError;
  }

  try {
    if (*run) return cmd_run(config_path, out_dir, workers);
    if (*sw) return cmd_sweep(config_path, param, values, out_dir, workers);
    if (*bounds) return cmd_bounds(config_path, horizon);
    if (*list) return cmd_list();
  } catch (const sb::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeFault;
  }
  return 0;
}
