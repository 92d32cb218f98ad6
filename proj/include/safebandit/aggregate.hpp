#pragma once

#include <span>
#include <string>
#include <vector>

namespace safebandit {

/// Metrics of one seeded trial, sampled every record_stride rounds and at T.
struct TrialSeries {
  std::vector<long long> t;
  std::vector<double> regret;       // cumulative pseudo-regret R_t
  std::vector<long long> unsafe;    // U_t, rounds on which nu^{A_t} > alpha
  std::vector<double> violation;    // sum of (nu^{A_t} - alpha)_+
  std::vector<long long> final_pulls;

  bool operator==(const TrialSeries&) const = default;
};

struct Summary {
  double mean = 0.0;
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  double min = 0.0;
  double max = 0.0;

  bool operator==(const Summary&) const = default;
};

/// Pointwise order statistics. Quartiles interpolate linearly between order
/// statistics (the usual "type 7" rule). Empty input gives NaNs.
Summary summarize(std::span<const double> values);

struct AggregateSeries {
  std::vector<long long> t;
  std::vector<Summary> regret;
  std::vector<Summary> unsafe;
  std::vector<Summary> violation;
  std::vector<double> mean_final_pulls;

  // Final-round value of each completed trial, in trial-index order.
  std::vector<double> final_regret;
  std::vector<double> final_unsafe;
  std::vector<double> final_violation;
  std::vector<std::vector<long long>> final_pulls;

  std::size_t trials() const { return final_regret.size(); }
  const Summary& final_regret_summary() const { return regret.back(); }
  const Summary& final_unsafe_summary() const { return unsafe.back(); }

  bool operator==(const AggregateSeries&) const = default;
};

/// Reduces completed trials (all sharing one recording grid) to pointwise statistics.
AggregateSeries aggregate(std::span<const TrialSeries> trials);

}  // namespace safebandit
