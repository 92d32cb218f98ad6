#include "safebandit/output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace safebandit {

using nlohmann::json;

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

void write_aggregate_csv(std::ostream& out, const AggregateSeries& s) {
  out << kAggregateCsvHeader << '\n';
  for (std::size_t r = 0; r < s.t.size(); ++r) {
    const auto& g = s.regret[r];
    const auto& u = s.unsafe[r];
    out << s.t[r] << ',' << num(g.mean) << ',' << num(g.median) << ',' << num(g.q1) << ',' << num(g.q3) << ','
        << num(g.min) << ',' << num(g.max) << ',' << num(u.mean) << ',' << num(u.median) << ',' << num(u.q1) << ','
        << num(u.q3) << ',' << num(s.violation[r].mean) << '\n';
  }
}

json sidecar_json(const AgentResult& result) {
  const auto& a = result.aggregate;
  json failures = json::array();
  for (const auto& f : result.failures) failures.push_back({{"trial", f.trial}, {"message", f.message}});
  return {
      {"agent", result.spec.id()},
      {"algorithm", std::string(to_string(result.spec.algorithm))},
      {"trials_completed", a.trials()},
      {"trials_failed", result.failures.size()},
      {"mean_final_pulls", a.mean_final_pulls},
      {"final_pulls", a.final_pulls},
      {"final_regret", a.final_regret},
      {"final_unsafe", a.final_unsafe},
      {"final_violation", a.final_violation},
      {"failures", failures},
  };
}

json to_json(const BoundReport& r) {
  json lower = json::array();
  for (const auto& c : r.lower_bound_coeffs) lower.push_back(c ? finite_or_null(*c) : json(nullptr));
  json j{
      {"k_star", r.k_star},
      {"mu_star", r.mu_star},
      {"regret_main_coeff", r.regret_main_coeff},
      {"unsafe_main_coeff", r.unsafe_main_coeff},
      {"regret_main_coeff_two_thirds_safety", r.regret_main_coeff_deflated},
      {"upper_pull_coeffs", r.upper_pull_coeffs},
      {"lower_bound_coeffs", lower},
  };
  if (r.horizon) {
    j["horizon"] = *r.horizon;
    j["regret_main_term_at_horizon"] = r.regret_main_coeff * std::log(*r.horizon);
    j["unsafe_main_term_at_horizon"] = r.unsafe_main_coeff * std::log(*r.horizon);
    j["gap_independent"] = r.gap_independent ? json(*r.gap_independent) : json(nullptr);
  }
  return j;
}

std::string file_stem(std::string_view id) {
  std::string out;
  for (char c : id) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' ||
                    c == '_' || c == '.';
    out += ok ? c : '_';
  }
  return out.empty() ? "agent" : out;
}

void write_experiment(const std::filesystem::path& dir, const ExperimentResult& result) {
  std::filesystem::create_directories(dir);
  for (const auto& a : result.agents) {
    const auto stem = file_stem(a.spec.id());
    std::ofstream csv(dir / (stem + ".csv"));
    if (!csv) throw std::runtime_error("cannot write " + (dir / (stem + ".csv")).string());
    write_aggregate_csv(csv, a.aggregate);
    std::ofstream side(dir / (stem + ".pulls.json"));
    side << sidecar_json(a).dump(2) << '\n';
  }
}

void write_sweep_csv(std::ostream& out, std::span<const SweepPoint> points) {
  out << kSweepCsvHeader << '\n';
  for (const auto& p : points) {
    if (!p.result) continue;
    for (const auto& a : p.result->agents) {
      const auto& agg = a.aggregate;
      out << num(p.value) << ',' << a.spec.id() << ',' << agg.trials() << ',' << a.failures.size();
      if (agg.trials() == 0) {
        out << ",nan,nan,nan,nan,nan\n";
        continue;
      }
      const auto& g = agg.final_regret_summary();
      const auto& u = agg.final_unsafe_summary();
      out << ',' << num(g.median) << ',' << num(g.mean) << ',' << num(u.median) << ',' << num(u.mean) << ','
          << num(agg.violation.back().mean) << '\n';
    }
  }
}

}  // namespace safebandit
