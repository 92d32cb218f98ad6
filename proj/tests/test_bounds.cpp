#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "safebandit/bounds.hpp"
#include "safebandit/instance.hpp"
#include "safebandit/stats.hpp"

using namespace safebandit;
using doctest::Approx;

namespace {

SafeBanditInstance drug() {
  const double mu[] = {0.360, 0.340, 0.469, 0.465, 0.537};
  const double nu[] = {0.160, 0.259, 0.184, 0.209, 0.293};
  return SafeBanditInstance::bernoulli(mu, nu, 0.21);
}

SafeBanditInstance two_arm() {
  const double mu[] = {0.5, 1.0};
  const double nu[] = {0.0, 1.0};
  return SafeBanditInstance::bernoulli(mu, nu, 0.5);
}

}  // namespace

TEST_CASE("drug-trial main terms") {
  const auto inst = drug();
  const auto g = ground_truth(inst);
  // Reference values: direct double-precision evaluation of the sums in an
  // independent script, frozen here.
  CHECK(regret_main_term(g, inst) == Approx(137.08595214210789).epsilon(1e-10));
  CHECK(unsafe_main_term(g, inst) == Approx(81.59390085443223).epsilon(1e-10));
  CHECK(std::fabs(regret_main_term(g, inst) - 137.0) <= 1.0);
  CHECK(std::fabs(unsafe_main_term(g, inst) - 81.0) <= 1.0);
  CHECK(regret_main_term(g, inst, SafetyDeflation::two_thirds) == Approx(139.2576518163891).epsilon(1e-10));
  CHECK(lower_bound_coeff(g, inst, 1) == Approx(24.36552531966371).epsilon(1e-10));
}

TEST_CASE("two-arm example main terms") {
  const auto inst = two_arm();
  const auto g = ground_truth(inst);
  CHECK(regret_main_term(g, inst) == Approx(0.5 / std::numbers::ln2).epsilon(1e-12));
  CHECK(unsafe_main_term(g, inst) == Approx(1.0 / std::numbers::ln2).epsilon(1e-12));
  CHECK(lower_bound_coeff(g, inst, 1) == Approx(1.0 / std::numbers::ln2).epsilon(1e-12));
  CHECK_THROWS_AS(lower_bound_coeff(g, inst, 0), std::invalid_argument);
}

TEST_CASE("degenerate instances give zero main terms") {
  const double mu[] = {0.4};
  const double nu[] = {0.1};
  const auto single = SafeBanditInstance::bernoulli(mu, nu, 0.2);
  CHECK(regret_main_term(ground_truth(single), single) == 0.0);
  CHECK(unsafe_main_term(ground_truth(single), single) == 0.0);

  const double mu2[] = {0.4, 0.6, 0.2};
  const double nu2[] = {0.1, 0.1, 0.0};
  const auto safe = SafeBanditInstance::bernoulli(mu2, nu2, 0.2);
  CHECK(unsafe_main_term(ground_truth(safe), safe) == 0.0);
  CHECK(regret_main_term(ground_truth(safe), safe) > 0.0);
}

TEST_CASE("arm with only an inefficiency gap") {
  const double mu[] = {0.7, 0.4};
  const double nu[] = {0.1, 0.1};
  const auto inst = SafeBanditInstance::bernoulli(mu, nu, 0.2);
  const auto g = ground_truth(inst);
  CHECK(lower_bound_coeff(g, inst, 1) == Approx(1.0 / bern_kl(0.4, 0.7)).epsilon(1e-12));
  CHECK(upper_pull_coeff(g, inst, 1) == Approx(1.0 / bern_kl(0.4, 0.7)).epsilon(1e-12));
}

TEST_CASE("gap-independent bound") {
  CHECK(gap_independent_bound(2, std::exp(3.0)) ==
        Approx(std::sqrt(56.0 * std::exp(3.0) * 3.0) + 12.0 * std::log(3.0) + 32.0).epsilon(1e-12));
  CHECK(gap_independent_bound(2, std::exp(3.0)) == Approx(103.27267697551648).epsilon(1e-10));
  CHECK(gap_independent_bound(5, 5e4) == Approx(8806.225195334511).epsilon(1e-10));
  double prev = 0.0;
  for (double T = 3.0; T < 1e7; T *= 1.7) {
    const double v = gap_independent_bound(3, T);
    CHECK(v > prev);
    CHECK(gap_independent_bound(4, T) > v);
    prev = v;
  }
  CHECK_THROWS_AS(gap_independent_bound(1, 100.0), std::invalid_argument);
  CHECK_THROWS_AS(gap_independent_bound(2, 2.0), std::invalid_argument);
}

TEST_CASE("lower and upper coefficients sandwich on random instances") {
  RngStream rng(31);
  int checked = 0;
  for (int it = 0; it < 500; ++it) {
    const std::size_t K = 2 + static_cast<std::size_t>(rng.uniform() * 6);
    std::vector<double> mu(K), nu(K);
    for (std::size_t k = 0; k < K; ++k) {
      mu[k] = 0.01 + 0.98 * rng.uniform();
      nu[k] = 0.01 + 0.98 * rng.uniform();
    }
    const double alpha = 0.05 + 0.9 * rng.uniform();
    nu[0] = alpha * rng.uniform();
    const auto inst = SafeBanditInstance::bernoulli(mu, nu, alpha);
    const auto g = ground_truth(inst);
    for (ArmIndex k = 0; k < K; ++k) {
      if (k == g.k_star) continue;
      const double lo = lower_bound_coeff(g, inst, k);
      const double up = upper_pull_coeff(g, inst, k);
      CHECK(std::isfinite(up));
      CHECK(lo <= up * (1 + 1e-12));
      CHECK(up <= 2.0 * lo * (1 + 1e-12));
      ++checked;
    }
    CHECK(std::isfinite(regret_main_term(g, inst)));
  }
  CHECK(checked > 1000);
}

TEST_CASE("adding safe arms at mu* leaves the main terms unchanged") {
  const auto base = drug();
  const auto gb = ground_truth(base);
  std::vector<double> mu{0.360, 0.340, 0.469, 0.465, 0.537, 0.469, 0.469};
  std::vector<double> nu{0.160, 0.259, 0.184, 0.209, 0.293, 0.0, 0.21};
  const auto ext = SafeBanditInstance::bernoulli(mu, nu, 0.21);
  const auto ge = ground_truth(ext);
  CHECK(ge.k_star == 2);
  CHECK(regret_main_term(ge, ext) == Approx(regret_main_term(gb, base)).epsilon(1e-14));
  CHECK(unsafe_main_term(ge, ext) == Approx(unsafe_main_term(gb, base)).epsilon(1e-14));
  CHECK(upper_pull_coeff(ge, ext, 5) == 0.0);
}

TEST_CASE("bound report") {
  const auto r = bound_report(drug(), 5e4);
  CHECK(r.k_star == 2);
  CHECK(r.mu_star == 0.469);
  CHECK(r.upper_pull_coeffs.size() == 5);
  CHECK(r.upper_pull_coeffs[2] == 0.0);
  CHECK_FALSE(r.lower_bound_coeffs[2]);
  REQUIRE(r.lower_bound_coeffs[0]);
  CHECK(*r.lower_bound_coeffs[0] == Approx(41.19906762963234).epsilon(1e-10));
  REQUIRE(r.gap_independent);
  CHECK(*r.gap_independent == Approx(8806.225195334511).epsilon(1e-10));
  CHECK_FALSE(bound_report(drug()).gap_independent);
}
