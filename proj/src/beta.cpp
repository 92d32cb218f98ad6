#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "safebandit/stats.hpp"

namespace safebandit {

namespace {

constexpr int kContinuedFractionCap = 300;
constexpr double kCfEps = 1e-15;
constexpr double kTiny = 1e-300;

double log_gamma(double x) {
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(x, &sign);  // std::lgamma writes the global signgam
#else
  return std::lgamma(x);
#endif
}

// Continued fraction for I_x(a,b) (the b_m/a_m expansion), modified Lentz.
double incbeta_fraction(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kContinuedFractionCap; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;

    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kCfEps) return h;
  }
  throw NumericsError("incomplete beta continued fraction did not converge for a=" +
                      std::to_string(a) + " b=" + std::to_string(b) + " x=" + std::to_string(x));
}

}  // namespace

BetaParams::BetaParams(double a_, double b_) : a(a_), b(b_) {
  if (!(a > 0.0 && b > 0.0 && std::isfinite(a) && std::isfinite(b)))
    throw std::invalid_argument("Beta shapes must be positive and finite");
}

double log_beta(double a, double b) { return log_gamma(a) + log_gamma(b) - log_gamma(a + b); }

double beta_pdf(const BetaParams& p, double x) {
  if (x < 0.0 || x > 1.0) return 0.0;
  if (x == 0.0) return p.a < 1.0 ? kInf : (p.a == 1.0 ? p.b : 0.0);
  if (x == 1.0) return p.b < 1.0 ? kInf : (p.b == 1.0 ? p.a : 0.0);
  return std::exp((p.a - 1.0) * std::log(x) + (p.b - 1.0) * std::log1p(-x) - log_beta(p.a, p.b));
}

double beta_cdf(const BetaParams& p, double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("beta_cdf: x must lie in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double a = p.a;
  const double b = p.b;
  const double log_front = a * std::log(x) + b * std::log1p(-x) - log_beta(a, b);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * incbeta_fraction(a, b, x) / a;
  return 1.0 - front * incbeta_fraction(b, a, 1.0 - x) / b;
}

double beta_quantile(const BetaParams& p, double delta) {
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("beta_quantile: delta must lie in (0, 1)");

  double lo = 0.0;
  double hi = 1.0;
  double x = p.mean();
  const double lbeta = log_beta(p.a, p.b);
  for (int iter = 0; iter < 1200; ++iter) {
    const double f = beta_cdf(p, x) - delta;
    if (f == 0.0) return x;
    if (f < 0.0)
      lo = x;
    else
      hi = x;
    if (std::fabs(f) <= 1e-15 || hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * x) return x;

    const double log_density = (p.a - 1.0) * std::log(x) + (p.b - 1.0) * std::log1p(-x) - lbeta;
    const double density = std::exp(log_density);
    double next = density > 0.0 && std::isfinite(density) ? x - f / density : -1.0;
    if (!(next > lo && next < hi)) next = lo + 0.5 * (hi - lo);
    if (next == x) return x;
    x = next;
  }
  throw NumericsError("beta_quantile did not converge");
}

double gamma_sample(double shape, RngStream& rng) {
  if (shape < 1.0) {
    // Boost: Gamma(k) = Gamma(k + 1) * U^(1/k).
    const double g = gamma_sample(shape + 1.0, rng);
    return g * std::pow(rng.uniform_open(), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = rng.normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform_open();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double beta_sample(const BetaParams& p, RngStream& rng) {
  for (;;) {
    const double x = gamma_sample(p.a, rng);
    const double y = gamma_sample(p.b, rng);
    if (x + y > 0.0) return x / (x + y);
  }
}

}  // namespace safebandit
