#include "evt/normal.hpp"

#include <cmath>
#include <numbers>

#include "evt/errors.hpp"

namespace evt::normal {
namespace {

// erfc(x) * exp(x^2) * sqrt(pi) for x > 6 by the continued fraction
// 1 / (x + (1/2) / (x + 1 / (x + (3/2) / (x + ...)))), evaluated bottom-up.
double erfc_scaled_cf(double x) {
  double tail = x;
  for (int n = 80; n >= 1; --n) tail = x + (0.5 * n) / tail;
  return 1.0 / tail;
}

double log_erfc(double x) {
  if (x > 6.0) return -x * x + std::log(erfc_scaled_cf(x)) - 0.5 * std::log(std::numbers::pi);
  return std::log(std::erfc(x));
}

double initial_guess(double u) {
  // Abramowitz-Stegun 26.2.23, u <= 0.5.
  const double t = std::sqrt(-2.0 * std::log(u));
  return t - (2.515517 + 0.802853 * t + 0.010328 * t * t) /
                 (1.0 + 1.432788 * t + 0.189269 * t * t + 0.001308 * t * t * t);
}

double solve_upper(double u) {
  const double target = std::log(u);
  auto f = [&](double z) { return log_upper_tail(z) - target; };

  double z = initial_guess(u);
  double lo = z - 0.01;
  double hi = z + 0.01;
  while (f(lo) < 0) lo -= 0.5;
  while (f(hi) > 0) hi += 0.5;
  while (hi - lo > 1e-3) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0 ? lo : hi) = mid;
  }
  z = 0.5 * (lo + hi);
  for (int it = 0; it < 60; ++it) {
    const double fz = f(z);
    const double slope = -std::exp(std::log(pdf(z)) - log_upper_tail(z));
    double next = z - fz / slope;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    (f(next) > 0 ? lo : hi) = next;
    const double step = std::fabs(next - z);
    z = next;
    if (step <= 1e-15 * std::max(1.0, std::fabs(z))) break;
  }
  return z;
}

}  // namespace

double log_upper_tail(double z) {
  const double x = z / std::numbers::sqrt2;
  if (x < -6.0) return std::log1p(-0.5 * std::erfc(-x));
  return log_erfc(x) - std::numbers::ln2;
}

double pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }

double upper_quantile(double u) {
  if (!(u > 0.0 && u < 1.0)) fail(ErrorCode::Domain, "normal quantile requires 0 < u < 1");
  if (u == 0.5) return 0.0;
  if (u > 0.5) return -solve_upper(1.0 - u);
  return solve_upper(u);
}

}  // namespace evt::normal
