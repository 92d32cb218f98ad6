#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "safebandit/stats.hpp"

namespace safebandit {

namespace {

void require_probability(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0))
    throw std::invalid_argument(std::string(what) + " must lie in [0, 1], got " + std::to_string(x));
}

void require_budget(double c) {
  if (!(c >= 0.0)) throw std::invalid_argument("KL budget must be non-negative");
}

// x ln(x / y) with 0 ln 0 = 0.
double xlogx_over_y(double x, double y) {
  if (x == 0.0) return 0.0;
  if (y == 0.0) return kInf;
  return x * std::log(x / y);
}

// Unchecked divergence for the inner loops.
double kl_raw(double a, double b) {
  return xlogx_over_y(a, b) + xlogx_over_y(1.0 - a, 1.0 - b);
}

}  // namespace

double bern_kl(double a, double b) {
  require_probability(a, "first KL argument");
  require_probability(b, "second KL argument");
  if (a == b) return 0.0;
  const double d = kl_raw(a, b);
  return d > 0.0 ? d : 0.0;  // rounding can produce -0 or -ulp for a ~ b
}

double bern_kl_directed(double a, double b, KlDirection direction) {
  const double d = bern_kl(a, b);
  switch (direction) {
    case KlDirection::below:
      return a < b ? d : 0.0;
    case KlDirection::above:
      return a > b ? d : 0.0;
  }
  return 0.0;
}

int bisection_rounds(long long t) {
  int r = 0;
  while (r < 63 && (1LL << r) < t) ++r;
  return r < 4 ? 4 : r;
}

double kl_ucb_invert_lower(double nu_hat, double budget, std::optional<int> rounds) {
  require_probability(nu_hat, "empirical mean");
  require_budget(budget);
  if (budget == kInf || nu_hat == 0.0) return 0.0;
  if (budget == 0.0) return nu_hat;
  if (kl_raw(nu_hat, 0.0) <= budget) return 0.0;
  // The bound lies below the normal range, where q has no relative precision.
  if (kl_raw(nu_hat, std::numeric_limits<double>::min()) <= budget) return 0.0;

  // d(x||q) = [x ln x + (1-x) ln(1-x)] - x ln q - (1-x) ln(1-q); the bracket
  // is fixed, so fold it into the threshold.
  const double x = nu_hat;
  const double threshold = budget - xlogx_over_y(x, 1.0) - xlogx_over_y(1.0 - x, 1.0);
  auto feasible = [&](double q) { return -x * std::log(q) - (1.0 - x) * std::log1p(-q) <= threshold; };

  // d(x || q) decreases on [0, x]; lo is infeasible, hi feasible.
  double lo = 0.0;
  double hi = x;
  if (rounds) {
    for (int i = 0; i < *rounds; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (feasible(mid))
        hi = mid;
      else
        lo = mid;
    }
    return lo;
  }
  for (int i = 0; i < 1100; ++i) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (kl_raw(x, mid) <= budget)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

double kl_ucb_invert_upper(double mu_hat, double budget, std::optional<int> rounds) {
  require_probability(mu_hat, "empirical mean");
  require_budget(budget);
  if (budget == 0.0 || mu_hat == 1.0) return mu_hat;
  const double gap = kl_ucb_invert_lower(1.0 - mu_hat, budget, rounds);
  // Near 1 one ulp of q moves d(mu||q) by about (1 - mu) ulp / (1 - q); below
  // this scale 1 - gap cannot meet the inversion tolerance, so saturate.
  if (!rounds && gap < 1e-7 * (1.0 - mu_hat)) return 1.0;
  return 1.0 - gap;
}

}  // namespace safebandit
