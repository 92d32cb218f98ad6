#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
};

fs::path scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("safebandit_cli_test_" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

Outcome run(const std::string& args, const std::string& env = "") {
  const auto out = scratch() / "stdout.txt";
  const std::string cmd = env + " " + SAFEBANDIT_CLI + std::string(" ") + args + " > " + out.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

fs::path write_config(const std::string& name, const json& doc) {
  const auto p = scratch() / name;
  std::ofstream(p) << doc.dump(2);
  return p;
}

json small_config() {
  return json::parse(R"({
    "instance": {"preset": "drug-trial"},
    "horizon": 300, "trials": 3, "base_seed": 5, "record_stride": 100,
    "agents": ["docb", {"algorithm": "tsbu", "label": "tsbu/custom"}]
  })");
}

}  // namespace

TEST_CASE("list-algorithms prints every agent name") {
  const auto r = run("list-algorithms");
  CHECK(r.code == 0);
  CHECK(r.out == "docb\ntopsi\ntsbu\nnaive-ts\nnaive-ts-slack\nbwcr\npess\n");
}

TEST_CASE("bounds prints a JSON report") {
  const auto cfg = write_config("bounds.json", small_config());
  const auto r = run("bounds --config " + cfg.string() + " --horizon 50000");
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["k_star"] == 2);
  CHECK(std::fabs(j["regret_main_coeff"].get<double>() - 137.086) < 1e-3);
  CHECK(std::fabs(j["unsafe_main_coeff"].get<double>() - 81.594) < 1e-3);
  CHECK(j["lower_bound_coeffs"][2].is_null());
  CHECK(j["horizon"] == 50000.0);
  CHECK(j["gap_independent"].is_number());
}

TEST_CASE("run writes one CSV and sidecar per agent") {
  const auto cfg = write_config("run.json", small_config());
  const auto out = scratch() / "run_out";
  const auto r = run("run --config " + cfg.string() + " --out " + out.string() + " --workers 2");
  REQUIRE(r.code == 0);
  REQUIRE(fs::exists(out / "docb.csv"));
  REQUIRE(fs::exists(out / "tsbu_custom.csv"));
  REQUIRE(fs::exists(out / "docb.pulls.json"));
  std::ifstream csv(out / "docb.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header ==
        "t,regret_mean,regret_median,regret_q1,regret_q3,regret_min,regret_max,unsafe_mean,unsafe_median,unsafe_q1,"
        "unsafe_q3,violation_mean");
  std::ifstream side(out / "tsbu_custom.pulls.json");
  const auto j = json::parse(side);
  CHECK(j["agent"] == "tsbu/custom");
  CHECK(j["final_pulls"].size() == 3);
}

TEST_CASE("worker count from the environment and the flag give identical output") {
  const auto cfg = write_config("workers.json", small_config());
  const auto a = scratch() / "w_env";
  const auto b = scratch() / "w_flag";
  CHECK(run("run --config " + cfg.string() + " --out " + a.string(), "SAFEBANDIT_WORKERS=3").code == 0);
  CHECK(run("run --config " + cfg.string() + " --out " + b.string() + " --workers 1", "SAFEBANDIT_WORKERS=3").code ==
        0);
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  CHECK(slurp(a / "docb.csv") == slurp(b / "docb.csv"));
  CHECK(slurp(a / "tsbu_custom.pulls.json") == slurp(b / "tsbu_custom.pulls.json"));
}

TEST_CASE("sweep writes a summary table") {
  auto doc = small_config();
  doc["agents"] = json::array({"docb"});
  const auto cfg = write_config("sweep.json", doc);
  const auto out = scratch() / "sweep_out";
  const auto r = run("sweep --config " + cfg.string() + " --param instance.alpha --values 0.2,0.25 --out " + out.string());
  REQUIRE(r.code == 0);
  std::ifstream csv(out / "sweep.csv");
  std::string line;
  int rows = 0;
  while (std::getline(csv, line)) ++rows;
  CHECK(rows == 3);
  CHECK(fs::exists(out / "point_1" / "docb.csv"));
}

TEST_CASE("exit codes") {
  CHECK(run("").code == 1);
  CHECK(run("frobnicate").code == 1);
  CHECK(run("run --config /nonexistent.json --out " + (scratch() / "x").string()).code == 1);
  auto doc = small_config();
  doc["trials"] = 0;
  CHECK(run("run --config " + write_config("bad.json", doc).string() + " --out " + (scratch() / "x").string()).code ==
        1);
  std::ofstream(scratch() / "malformed.json") << "{ not json";
  CHECK(run("bounds --config " + (scratch() / "malformed.json").string()).code == 1);
  CHECK(run("sweep --config " + write_config("ok.json", small_config()).string() +
            " --param instance.alpha --values abc --out " + (scratch() / "y").string())
            .code == 1);
  // A point whose instance cannot be built is a runtime fault of the sweep.
  CHECK(run("sweep --config " + write_config("ok2.json", small_config()).string() +
            " --param instance.alpha --values 0.21,0.01 --out " + (scratch() / "z").string())
            .code == 2);
  // An unwritable output directory is a runtime fault.
  std::ofstream(scratch() / "file_not_dir") << "x";
  CHECK(run("run --config " + write_config("ok3.json", small_config()).string() + " --out " +
            (scratch() / "file_not_dir").string())
            .code == 2);
}
