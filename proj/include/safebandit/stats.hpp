#pragma once

// Bernoulli KL divergence, its confidence-bound inversions, and the Beta
// distribution (CDF, quantile, sampling).

#include <limits>
#include <optional>
#include <stdexcept>

#include "safebandit/rng.hpp"

namespace safebandit {

/// Raised when an iterative routine hits its iteration cap.
class NumericsError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class KlDirection { below, above };

/// d(a||b) in nats. 0 ln 0 = 0; +inf when b = 0 < a or a < 1 = b.
double bern_kl(double a, double b);

/// d_<(a||b) = d(a||b) 1{a < b}; d_>(a||b) = d(a||b) 1{a > b}.
double bern_kl_directed(double a, double b, KlDirection direction);

/// Number of bisection rounds used inside agents at round t: max(4, ceil(log2 t)).
int bisection_rounds(long long t);

/// Smallest q in [nu_hat, ...] going down: min{q <= nu_hat : d(nu_hat||q) <= budget}.
///
/// With `rounds` set, runs exactly that many bisection steps and returns the
/// low end of the final bracket (never above the exact bound). Without it the
/// bracket is shrunk until it collapses in double precision. A budget of +inf
/// returns 0.
double kl_ucb_invert_lower(double nu_hat, double budget, std::optional<int> rounds = std::nullopt);

/// Largest q >= mu_hat with d(mu_hat||q) <= budget. Computed through the
/// complement identity U(x, c) = 1 - L(1 - x, c), so the same rounds semantics
/// apply mirrored: the result is never below the exact bound.
double kl_ucb_invert_upper(double mu_hat, double budget, std::optional<int> rounds = std::nullopt);

struct BetaParams {
  double a;
  double b;

  BetaParams(double a_, double b_);

  double mean() const { return a / (a + b); }
  double variance() const { return a * b / ((a + b) * (a + b) * (a + b + 1.0)); }
};

/// ln B(a, b).
double log_beta(double a, double b);

/// Density of Beta(a, b) at x.
double beta_pdf(const BetaParams& p, double x);

/// Regularized incomplete beta I_x(a, b) by continued fraction (modified
/// Lentz), evaluated on whichever side of the mode converges quickly.
double beta_cdf(const BetaParams& p, double x);

/// q with I_q(a, b) = delta. Bracketing bisection safeguarding Newton steps.
double beta_quantile(const BetaParams& p, double delta);

/// Gamma(shape, 1) draw, Marsaglia-Tsang squeeze/rejection.
double gamma_sample(double shape, RngStream& rng);

/// Beta(a, b) draw as X / (X + Y) with X ~ Gamma(a), Y ~ Gamma(b).
double beta_sample(const BetaParams& p, RngStream& rng);

}  // namespace safebandit
