#pragma once

#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "evt/errors.hpp"

namespace evt {

/// 113-bit binary float. Used wherever a second-order remainder is formed as
/// the difference of two O(1) quantities.
using Quad = boost::multiprecision::cpp_bin_float_quad;

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// |gamma| below this is treated as exactly zero (Gumbel / logarithmic limits).
inline constexpr double kGammaZero = 1e-12;
/// Below this |gamma| the power difference uses a two-term series.
inline constexpr double kGammaSeries = 1e-6;

inline double to_double(double v) { return v; }
inline double to_double(const Quad& v) { return v.convert_to<double>(); }

/// (x^(-gamma) - 1) / gamma with the gamma -> 0 limit -log x.
template <class Real>
Real d_gamma(double gamma, const Real& x) {
  using std::log;
  using std::exp;
  using std::expm1;
  if (!(x > 0)) fail(ErrorCode::Domain, "d_gamma requires x > 0");
  const Real lx = log(x);
  const double ag = std::fabs(gamma);
  if (ag < kGammaZero) return -lx;
  if (ag < kGammaSeries) {
    const Real g = gamma;
    return -lx + g * lx * lx / 2 - g * g * lx * lx * lx / 6;
  }
  if constexpr (std::is_same_v<Real, double>) {
    return std::expm1(-gamma * lx) / gamma;
  } else {
    return (exp(-Real(gamma) * lx) - 1) / Real(gamma);
  }
}

double h_star(double gamma, double rho, double x);

/// Normalizer transformation a*(t), A*(t). Its case conditions are stated for
/// rho > 0; `warning` is set for rho < 0 inputs, where no case matches.
struct StarNormalizers {
  double a_star = kNaN;
  double A_star = kNaN;
  bool warning = false;
};
StarNormalizers star_normalizers(double a, double A, double gamma, double rho);

namespace detail {

using GK15 = boost::math::quadrature::gauss_kronrod<double, 15>;

struct Panel {
  double value = 0.0;
  double l1 = 0.0;
};

template <class F>
Panel gk_panel(F& f, double a, double b) {
  Panel p;
  p.value = GK15::integrate(f, a, b, 0, 0.0, nullptr, &p.l1);
  return p;
}

// Bisects until a panel agrees with the sum of its halves; `err` accumulates
// the accepted discrepancies.
template <class F>
double adaptive(F& f, double a, double b, const Panel& whole, double tol, int depth, double& err,
                double& l1) {
  const double mid = 0.5 * (a + b);
  const Panel left = gk_panel(f, a, mid);
  const Panel right = gk_panel(f, mid, b);
  const double sum = left.value + right.value;
  const double diff = std::fabs(sum - whole.value);
  const double floor = 64 * std::numeric_limits<double>::epsilon() * (left.l1 + right.l1);
  if (diff <= std::max(tol, floor) || depth == 0) {
    err += diff;
    l1 += left.l1 + right.l1;
    return sum;
  }
  return adaptive(f, a, mid, left, tol / 2, depth - 1, err, l1) +
         adaptive(f, mid, b, right, tol / 2, depth - 1, err, l1);
}

}  // namespace detail

/// Adaptive Gauss-Kronrod integral of f over [a, b] to absolute tolerance.
template <class F>
double integrate(F&& f, double a, double b, double abs_tol = 1e-11) {
  if (a == b) return 0.0;
  auto& fn = f;
  const detail::Panel whole = detail::gk_panel(fn, a, b);
  double err = 0.0;
  double l1 = 0.0;
  const double value = detail::adaptive(fn, a, b, whole, abs_tol, 30, err, l1);
  if (!std::isfinite(value) || err > std::max(abs_tol, 1e-13 * l1)) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "quadrature did not reach tolerance (estimated error %.3g, "
                                   "target %.3g)", err, abs_tol);
    fail(ErrorCode::Quadrature, buf);
  }
  return value;
}

/// \int_lo^hi g(t)/t dt evaluated in the variable w = log t.
template <class F>
double integrate_dt_over_t(F&& g, double lo, double hi, double abs_tol = 1e-11) {
  if (lo == hi) return 0.0;
  return integrate([&](double w) { return g(std::exp(w)); }, std::log(lo), std::log(hi),
                   abs_tol);
}

/// Step in w = log u used by the numeric derivative routes.
inline constexpr double kLogStep = 1e-2;

/// dF/dw at w = log u for F(w) = f(e^w); central differences at h and 2h,
/// Richardson-extrapolated once.
template <class F>
double log_derivative(F&& f, double u, double h = kLogStep) {
  if (!(u > 0) || u * std::exp(2 * h) >= 1.0) {
    fail(ErrorCode::Differentiation, "finite-difference stencil leaves (0, 1)");
  }
  const double w = std::log(u);
  auto at = [&](double dw) { return f(std::exp(w + dw)); };
  const double d_h = (at(h) - at(-h)) / (2 * h);
  const double d_2h = (at(2 * h) - at(-2 * h)) / (4 * h);
  return (4 * d_h - d_2h) / 3;
}

/// d^2F/dw^2 at w = log u, same stencil policy as log_derivative.
template <class F>
double log_second_derivative(F&& f, double u, double h = kLogStep) {
  if (!(u > 0) || u * std::exp(2 * h) >= 1.0) {
    fail(ErrorCode::Differentiation, "finite-difference stencil leaves (0, 1)");
  }
  const double w = std::log(u);
  auto at = [&](double dw) { return f(std::exp(w + dw)); };
  const double f0 = at(0.0);
  const double d_h = (at(h) - 2 * f0 + at(-h)) / (h * h);
  const double d_2h = (at(2 * h) - 2 * f0 + at(-2 * h)) / (4 * h * h);
  return (4 * d_h - d_2h) / 3;
}

/// n points from `first` to `last` equally spaced in log scale.
std::vector<double> geometric_grid(double first, double last, int n);

}  // namespace evt
