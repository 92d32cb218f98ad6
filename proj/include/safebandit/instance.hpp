#pragma once

// Safe bandit problem instances: arm laws, ground truth and per-round regret.

#include <cstddef>
#include <span>
#include <vector>

#include "safebandit/rng.hpp"

namespace safebandit {

using ArmIndex = std::size_t;

/// Law of one coordinate (reward or risk) of an arm, supported on [0, 1].
struct MarginalLaw {
  enum class Kind { bernoulli, point, uniform };

  Kind kind = Kind::bernoulli;
  double lo = 0.0;  // bernoulli: success probability; point: the value
  double hi = 0.0;  // uniform only

  static MarginalLaw bernoulli(double p) { return {Kind::bernoulli, p, p}; }
  static MarginalLaw point(double v) { return {Kind::point, v, v}; }
  static MarginalLaw uniform(double lo, double hi) { return {Kind::uniform, lo, hi}; }

  double mean() const { return kind == Kind::uniform ? 0.5 * (lo + hi) : lo; }
  double draw(RngStream& rng) const;
  void validate() const;
};

/// Joint law of (R, S) for one arm. Coordinates are drawn independently.
struct ArmLaw {
  MarginalLaw reward;
  MarginalLaw risk;

  double mu() const { return reward.mean(); }
  double nu() const { return risk.mean(); }
};

enum class Family { bernoulli_independent, general_bounded };

struct Observation {
  double reward;
  double risk;
};

class SafeBanditInstance {
public:
  SafeBanditInstance(double alpha, std::vector<ArmLaw> arms, Family family);

  /// Independent Bernoulli rewards and risks with the given means.
  static SafeBanditInstance bernoulli(std::span<const double> mu, std::span<const double> nu, double alpha);

  double alpha() const { return alpha_; }
  Family family() const { return family_; }
  std::size_t arm_count() const { return arms_.size(); }
  const ArmLaw& arm(ArmIndex k) const { return arms_.at(k); }
  double mu(ArmIndex k) const { return arms_.at(k).mu(); }
  double nu(ArmIndex k) const { return arms_.at(k).nu(); }

  Observation sample(ArmIndex k, RngStream& rng) const;

private:
  double alpha_;
  std::vector<ArmLaw> arms_;
  Family family_;
};

struct GroundTruth {
  ArmIndex k_star = 0;
  double mu_star = 0.0;
  double alpha = 0.0;
  std::vector<double> inefficiency;  // Delta^k = (mu* - mu^k)_+
  std::vector<double> safety;        // Gamma^k = (nu^k - alpha)_+

  std::size_t arm_count() const { return inefficiency.size(); }
  bool is_unsafe(ArmIndex k) const { return safety.at(k) > 0.0; }
};

/// Best safe arm (lowest index among ties) and the two gap vectors.
/// Throws std::invalid_argument if no arm satisfies nu <= alpha.
GroundTruth ground_truth(const SafeBanditInstance& instance);

/// Delta^k v Gamma^k.
double regret_increment(const GroundTruth& truth, ArmIndex arm);

/// Replaces a bounded observation by two independent Bernoulli bits with the
/// same means. Identity on inputs that are already bits.
Observation binarize(const Observation& obs, RngStream& rng);

}  // namespace safebandit
