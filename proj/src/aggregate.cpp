#include "safebandit/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace safebandit {

namespace {

double interpolated_quantile(const std::vector<double>& sorted, double p) {
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

Summary summarize(std::span<const double> values) {
  if (values.empty()) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return {nan, nan, nan, nan, nan, nan};
  }
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  Summary s;
  s.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  s.median = interpolated_quantile(v, 0.5);
  s.q1 = interpolated_quantile(v, 0.25);
  s.q3 = interpolated_quantile(v, 0.75);
  s.min = v.front();
  s.max = v.back();
  return s;
}

AggregateSeries aggregate(std::span<const TrialSeries> trials) {
  AggregateSeries out;
  if (trials.empty()) return out;
  out.t = trials.front().t;
  const std::size_t rows = out.t.size();
  const std::size_t arms = trials.front().final_pulls.size();
  for (const auto& tr : trials)
    if (tr.t != out.t || tr.final_pulls.size() != arms) throw std::invalid_argument("trials recorded on different grids");

  std::vector<double> column(trials.size());
  auto reduce = [&](auto member, std::vector<Summary>& dst) {
    dst.reserve(rows);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t i = 0; i < trials.size(); ++i) column[i] = static_cast<double>((trials[i].*member)[r]);
      dst.push_back(summarize(column));
    }
  };
  reduce(&TrialSeries::regret, out.regret);
  reduce(&TrialSeries::unsafe, out.unsafe);
  reduce(&TrialSeries::violation, out.violation);

  out.mean_final_pulls.assign(arms, 0.0);
  for (const auto& tr : trials) {
    out.final_regret.push_back(tr.regret.back());
    out.final_unsafe.push_back(static_cast<double>(tr.unsafe.back()));
    out.final_violation.push_back(tr.violation.back());
    out.final_pulls.push_back(tr.final_pulls);
    for (std::size_t k = 0; k < arms; ++k) out.mean_final_pulls[k] += static_cast<double>(tr.final_pulls[k]);
  }
  for (auto& m : out.mean_final_pulls) m /= static_cast<double>(trials.size());
  return out;
}

}  // namespace safebandit
