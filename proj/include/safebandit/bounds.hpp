#pragma once

// Main terms of the instance-dependent upper bounds, the gap-independent
// bound, and the matching lower bound, evaluated for a concrete instance.

#include <optional>
#include <vector>

#include "safebandit/instance.hpp"

namespace safebandit {

/// Scale applied to d_>(nu^k || alpha) in the upper-bound denominators.
/// The BayesUCB-filtered variant proves its bound with a 2/3 factor there.
enum class SafetyDeflation { none, two_thirds };

/// Denominator d_<(mu^k || mu*) v (scale * d_>(nu^k || alpha)).
double upper_denominator(const GroundTruth& truth, const SafeBanditInstance& instance, ArmIndex arm,
                         SafetyDeflation deflation = SafetyDeflation::none);

/// Per-arm coefficient of log T in the bound on E[N_T^k]; 0 for zero-gap arms.
double upper_pull_coeff(const GroundTruth& truth, const SafeBanditInstance& instance, ArmIndex arm,
                        SafetyDeflation deflation = SafetyDeflation::none);

/// sum_{k != k*} (Delta^k v Gamma^k) / denominator: coefficient of log T in E[R_T].
double regret_main_term(const GroundTruth& truth, const SafeBanditInstance& instance,
                        SafetyDeflation deflation = SafetyDeflation::none);

/// sum_{k : Gamma^k > 0} 1 / denominator: coefficient of log T in E[U_T].
double unsafe_main_term(const GroundTruth& truth, const SafeBanditInstance& instance,
                        SafetyDeflation deflation = SafetyDeflation::none);

/// sqrt(28 K T log T) + 6 K log log T + 32, with log log T evaluated at max(T, 16).
double gap_independent_bound(std::size_t arm_count, double horizon);

/// 1 / (d_<(mu^k || mu*) + d_>(nu^k || alpha)). Rejects arm == k*.
double lower_bound_coeff(const GroundTruth& truth, const SafeBanditInstance& instance, ArmIndex arm);

struct BoundReport {
  ArmIndex k_star = 0;
  double mu_star = 0.0;
  double regret_main_coeff = 0.0;
  double unsafe_main_coeff = 0.0;
  double regret_main_coeff_deflated = 0.0;  // 2/3-scaled safety denominator
  std::vector<double> upper_pull_coeffs;
  std::vector<std::optional<double>> lower_bound_coeffs;  // nullopt at k*
  std::optional<double> horizon;
  std::optional<double> gap_independent;
};

BoundReport bound_report(const SafeBanditInstance& instance, std::optional<double> horizon = std::nullopt);

}  // namespace safebandit
