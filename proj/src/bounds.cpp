#include "safebandit/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "safebandit/stats.hpp"

namespace safebandit {

namespace {

double directed_below(const GroundTruth& truth, const SafeBanditInstance& instance, ArmIndex arm) {
  return bern_kl_directed(instance.mu(arm), truth.mu_star, KlDirection::below);
}

double directed_above(const GroundTruth& truth, const SafeBanditInstance& instance, ArmIndex arm) {
  return bern_kl_directed(instance.nu(arm), truth.alpha, KlDirection::above);
}

}  // namespace

double upper_denominator(const GroundTruth& truth, const SafeBanditInstance& instance, ArmIndex arm,
                         SafetyDeflation deflation) {
  const double scale = deflation == SafetyDeflation::two_thirds ? 2.0 / 3.0 : 1.0;
  return std::max(directed_below(truth, instance, arm), scale * directed_above(truth, instance, arm));
}

double upper_pull_coeff(const GroundTruth& truth, const SafeBanditInstance& instance, ArmIndex arm,
                        SafetyDeflation deflation) {
  if (regret_increment(truth, arm) == 0.0) return 0.0;
  const double den = upper_denominator(truth, instance, arm, deflation);
  if (den <= 0.0) throw std::logic_error("positive gap with zero KL denominator");
  return 1.0 / den;
}

double regret_main_term(const GroundTruth& truth, const SafeBanditInstance& instance, SafetyDeflation deflation) {
  double total = 0.0;
  for (ArmIndex k = 0; k < instance.arm_count(); ++k) {
    if (k == truth.k_star) continue;
    total += regret_increment(truth, k) * upper_pull_coeff(truth, instance, k, deflation);
  }
  return total;
}

double unsafe_main_term(const GroundTruth& truth, const SafeBanditInstance& instance, SafetyDeflation deflation) {
  double total = 0.0;
  for (ArmIndex k = 0; k < instance.arm_count(); ++k)
    if (truth.is_unsafe(k)) total += upper_pull_coeff(truth, instance, k, deflation);
  return total;
}

double gap_independent_bound(std::size_t arm_count, double horizon) {
  if (arm_count < 2) throw std::invalid_argument("gap_independent_bound needs K >= 2");
  if (!(horizon >= 3.0)) throw std::invalid_argument("gap_independent_bound needs T >= 3");
  const double K = static_cast<double>(arm_count);
  const double loglog = std::log(std::log(std::max(horizon, 16.0)));
  return std::sqrt(28.0 * K * horizon * std::log(horizon)) + 6.0 * K * loglog + 32.0;
}

double lower_bound_coeff(const GroundTruth& truth, const SafeBanditInstance& instance, ArmIndex arm) {
  if (arm == truth.k_star) throw std::invalid_argument("lower_bound_coeff is undefined at k*");
  const double den = directed_below(truth, instance, arm) + directed_above(truth, instance, arm);
  return den > 0.0 ? 1.0 / den : kInf;
}

BoundReport bound_report(const SafeBanditInstance& instance, std::optional<double> horizon) {
  const auto truth = ground_truth(instance);
  BoundReport r;
  r.k_star = truth.k_star;
  r.mu_star = truth.mu_star;
  r.regret_main_coeff = regret_main_term(truth, instance);
  r.unsafe_main_coeff = unsafe_main_term(truth, instance);
  r.regret_main_coeff_deflated = regret_main_term(truth, instance, SafetyDeflation::two_thirds);
  for (ArmIndex k = 0; k < instance.arm_count(); ++k) {
    r.upper_pull_coeffs.push_back(upper_pull_coeff(truth, instance, k));
    if (k == truth.k_star)
      r.lower_bound_coeffs.emplace_back(std::nullopt);
    else
      r.lower_bound_coeffs.emplace_back(lower_bound_coeff(truth, instance, k));
  }
  if (horizon) {
    r.horizon = horizon;
    if (instance.arm_count() >= 2 && *horizon >= 3.0) r.gap_independent = gap_independent_bound(instance.arm_count(), *horizon);
  }
  return r;
}

}  // namespace safebandit
