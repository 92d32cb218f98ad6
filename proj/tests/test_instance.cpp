#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <vector>

#include "safebandit/instance.hpp"

using namespace safebandit;
using doctest::Approx;

namespace {

SafeBanditInstance two_arm() {
  const double mu[] = {0.5, 1.0};
  const double nu[] = {0.0, 1.0};
  return SafeBanditInstance::bernoulli(mu, nu, 0.5);
}

}  // namespace

TEST_CASE("ground truth of the two-arm example") {
  const auto g = ground_truth(two_arm());
  CHECK(g.k_star == 0);
  CHECK(g.mu_star == 0.5);
  CHECK(g.inefficiency == std::vector<double>{0.0, 0.0});
  CHECK(g.safety == std::vector<double>{0.0, 0.5});
  CHECK(regret_increment(g, 0) == 0.0);
  CHECK(regret_increment(g, 1) == 0.5);
}

TEST_CASE("ground truth of the drug-trial means at alpha = 0.21") {
  const double mu[] = {0.360, 0.340, 0.469, 0.465, 0.537};
  const double nu[] = {0.160, 0.259, 0.184, 0.209, 0.293};
  const auto g = ground_truth(SafeBanditInstance::bernoulli(mu, nu, 0.21));
  CHECK(g.k_star == 2);
  CHECK(g.mu_star == 0.469);
  CHECK(g.is_unsafe(1));
  CHECK(g.is_unsafe(4));
  CHECK_FALSE(g.is_unsafe(3));
}

TEST_CASE("single safe arm has zero gaps") {
  const double mu[] = {0.4};
  const double nu[] = {0.1};
  const auto g = ground_truth(SafeBanditInstance::bernoulli(mu, nu, 0.2));
  CHECK(g.k_star == 0);
  CHECK(g.inefficiency[0] == 0.0);
  CHECK(g.safety[0] == 0.0);
}

TEST_CASE("infeasible and malformed instances are rejected") {
  const double mu[] = {0.4, 0.5};
  const double nu[] = {0.6, 0.7};
  CHECK_THROWS_AS(SafeBanditInstance::bernoulli(mu, nu, 0.5), std::invalid_argument);
  const double bad[] = {0.4, 1.5};
  const double ok[] = {0.0, 0.0};
  CHECK_THROWS_AS(SafeBanditInstance::bernoulli(bad, ok, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(SafeBanditInstance::bernoulli(ok, ok, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(SafeBanditInstance(0.5, {{MarginalLaw::uniform(0, 1), MarginalLaw::point(0)}},
                                     Family::bernoulli_independent),
                  std::invalid_argument);
}

TEST_CASE("regret increment is the larger gap") {
  GroundTruth g;
  g.inefficiency = {0.0, 0.1};
  g.safety = {0.0, 0.05};
  CHECK(regret_increment(g, 0) == 0.0);
  CHECK(regret_increment(g, 1) == 0.1);
}

TEST_CASE("ties for the best safe arm go to the lowest index") {
  const double mu[] = {0.2, 0.6, 0.6, 0.9};
  const double nu[] = {0.0, 0.1, 0.1, 0.8};
  const auto g = ground_truth(SafeBanditInstance::bernoulli(mu, nu, 0.5));
  CHECK(g.k_star == 1);
}

TEST_CASE("ground truth is equivariant under arm permutations") {
  const std::vector<double> mu{0.3, 0.55, 0.7, 0.45, 0.1};
  const std::vector<double> nu{0.2, 0.35, 0.6, 0.1, 0.0};
  const auto base = ground_truth(SafeBanditInstance::bernoulli(mu, nu, 0.4));
  std::vector<std::size_t> perm(mu.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::vector<double> pm, pn;
    for (auto p : perm) {
      pm.push_back(mu[p]);
      pn.push_back(nu[p]);
    }
    const auto g = ground_truth(SafeBanditInstance::bernoulli(pm, pn, 0.4));
    CHECK(perm[g.k_star] == base.k_star);
    for (std::size_t k = 0; k < perm.size(); ++k) {
      CHECK(g.inefficiency[k] == base.inefficiency[perm[k]]);
      CHECK(g.safety[k] == base.safety[perm[k]]);
      CHECK((regret_increment(g, k) == 0.0) == (k == g.k_star));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST_CASE("sampling degenerate and fair arms") {
  const double mu[] = {1.0, 0.5};
  const double nu[] = {0.0, 0.5};
  const auto inst = SafeBanditInstance::bernoulli(mu, nu, 0.5);
  RngStream rng(3);
  for (int i = 0; i < 100; ++i) {
    const auto o = inst.sample(0, rng);
    CHECK(o.reward == 1.0);
    CHECK(o.risk == 0.0);
  }
  double r = 0.0, s = 0.0;
  const int n = 100'000;
  for (int i = 0; i < n; ++i) {
    const auto o = inst.sample(1, rng);
    r += o.reward;
    s += o.risk;
  }
  CHECK(std::fabs(r / n - 0.5) < 0.01);
  CHECK(std::fabs(s / n - 0.5) < 0.01);
  CHECK_THROWS_AS(inst.sample(2, rng), std::out_of_range);
}

TEST_CASE("sample stream is deterministic per seed") {
  const auto inst = two_arm();
  RngStream a(99), b(99);
  for (int i = 0; i < 500; ++i) {
    const auto x = inst.sample(i % 2, a);
    const auto y = inst.sample(i % 2, b);
    CHECK(x.reward == y.reward);
    CHECK(x.risk == y.risk);
  }
}

TEST_CASE("general-bounded arms have the declared means") {
  const SafeBanditInstance inst(0.3, {{MarginalLaw::uniform(0.2, 0.6), MarginalLaw::point(0.25)},
                                      {MarginalLaw::point(0.9), MarginalLaw::uniform(0.0, 1.0)}},
                                Family::general_bounded);
  CHECK(inst.mu(0) == Approx(0.4));
  CHECK(inst.nu(0) == 0.25);
  CHECK(inst.nu(1) == 0.5);
  RngStream rng(5);
  double r = 0.0;
  const int n = 100'000;
  for (int i = 0; i < n; ++i) {
    const auto o = inst.sample(0, rng);
    CHECK(o.reward >= 0.2);
    CHECK(o.reward <= 0.6);
    CHECK(o.risk == 0.25);
    r += o.reward;
  }
  CHECK(std::fabs(r / n - 0.4) < 0.01);
}

TEST_CASE("binarize keeps bits and matches means") {
  RngStream rng(8);
  for (int i = 0; i < 100; ++i) {
    const auto a = binarize({1.0, 0.0}, rng);
    CHECK(a.reward == 1.0);
    CHECK(a.risk == 0.0);
    const auto b = binarize({0.0, 1.0}, rng);
    CHECK(b.reward == 0.0);
    CHECK(b.risk == 1.0);
  }
  double sum = 0.0;
  const int n = 100'000;
  for (int i = 0; i < n; ++i) sum += binarize({0.5, 0.25}, rng).reward;
  CHECK(std::fabs(sum / n - 0.5) < 0.01);
  CHECK_THROWS_AS(binarize({1.2, 0.0}, rng), std::invalid_argument);
}
