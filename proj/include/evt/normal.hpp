#pragma once

namespace evt::normal {

/// log of the standard normal upper tail, log(1 - Phi(z)), finite for all z.
double log_upper_tail(double z);

/// Standard normal density.
double pdf(double z);

/// z with 1 - Phi(z) = u, i.e. Phi^{-1}(1 - u). Absolute error below 1e-10
/// for u >= 1e-300 (bracketing bisection, then Newton on the log tail).
double upper_quantile(double u);

}  // namespace evt::normal
