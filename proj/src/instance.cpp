#include "safebandit/instance.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace safebandit {

namespace {

bool in_unit(double x) { return x >= 0.0 && x <= 1.0; }

}  // namespace

double MarginalLaw::draw(RngStream& rng) const {
  switch (kind) {
    case Kind::bernoulli:
      return rng.bernoulli(lo) ? 1.0 : 0.0;
    case Kind::point:
      return lo;
    case Kind::uniform:
      return lo + (hi - lo) * rng.uniform();
  }
  return lo;
}

void MarginalLaw::validate() const {
  if (!in_unit(lo) || !in_unit(hi)) throw std::invalid_argument("arm law parameters must lie in [0, 1]");
  if (kind == Kind::uniform && hi < lo) throw std::invalid_argument("uniform law needs lo <= hi");
}

SafeBanditInstance::SafeBanditInstance(double alpha, std::vector<ArmLaw> arms, Family family)
    : alpha_(alpha), arms_(std::move(arms)), family_(family) {
  if (!in_unit(alpha_)) throw std::invalid_argument("alpha must lie in [0, 1]");
  if (arms_.empty()) throw std::invalid_argument("instance needs at least one arm");
  for (const auto& a : arms_) {
    a.reward.validate();
    a.risk.validate();
    if (family_ == Family::bernoulli_independent &&
        (a.reward.kind != MarginalLaw::Kind::bernoulli || a.risk.kind != MarginalLaw::Kind::bernoulli))
      throw std::invalid_argument("bernoulli-independent instances take Bernoulli arm laws only");
  }
  const bool feasible = std::any_of(arms_.begin(), arms_.end(), [&](const ArmLaw& a) { return a.nu() <= alpha_; });
  if (!feasible)
    throw std::invalid_argument("infeasible instance: no arm has nu <= alpha (add a (0, 0) arm)");
}

SafeBanditInstance SafeBanditInstance::bernoulli(std::span<const double> mu, std::span<const double> nu, double alpha) {
  if (mu.size() != nu.size()) throw std::invalid_argument("mu and nu must have the same length");
  std::vector<ArmLaw> arms;
  arms.reserve(mu.size());
  for (std::size_t k = 0; k < mu.size(); ++k)
    arms.push_back({MarginalLaw::bernoulli(mu[k]), MarginalLaw::bernoulli(nu[k])});
  return SafeBanditInstance(alpha, std::move(arms), Family::bernoulli_independent);
}

Observation SafeBanditInstance::sample(ArmIndex k, RngStream& rng) const {
  if (k >= arms_.size()) throw std::out_of_range("arm index " + std::to_string(k) + " out of range");
  const auto& a = arms_[k];
  const double r = a.reward.draw(rng);
  const double s = a.risk.draw(rng);
  return {r, s};
}

GroundTruth ground_truth(const SafeBanditInstance& instance) {
  const std::size_t K = instance.arm_count();
  GroundTruth g;
  g.alpha = instance.alpha();
  bool found = false;
  for (ArmIndex k = 0; k < K; ++k) {
    if (instance.nu(k) > instance.alpha()) continue;
    if (!found || instance.mu(k) > g.mu_star) {
      g.k_star = k;
      g.mu_star = instance.mu(k);
      found = true;
    }
  }
  if (!found) throw std::invalid_argument("infeasible instance: no safe arm");
  g.inefficiency.resize(K);
  g.safety.resize(K);
  for (ArmIndex k = 0; k < K; ++k) {
    g.inefficiency[k] = std::max(0.0, g.mu_star - instance.mu(k));
    g.safety[k] = std::max(0.0, instance.nu(k) - instance.alpha());
  }
  return g;
}

double regret_increment(const GroundTruth& truth, ArmIndex arm) {
  return std::max(truth.inefficiency.at(arm), truth.safety.at(arm));
}

Observation binarize(const Observation& obs, RngStream& rng) {
  if (!in_unit(obs.reward) || !in_unit(obs.risk)) throw std::invalid_argument("binarize: inputs must lie in [0, 1]");
  const double r = rng.bernoulli(obs.reward) ? 1.0 : 0.0;
  const double s = rng.bernoulli(obs.risk) ? 1.0 : 0.0;
  return {r, s};
}

}  // namespace safebandit
