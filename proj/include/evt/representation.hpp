#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "evt/catalog.hpp"

namespace evt {

enum class BMethod { Auto, Analytic, Numeric };

/// Closed-form b(u) where the family provides one.
std::optional<double> analytic_b(const Distribution& dist, double u);

/// b(u) from central differences of the quantile in log u.
double numeric_b(const Distribution& dist, double u);

/// Regime-dependent b(u):
///   Frechet  -(gamma + d log Q / d log u)
///   Weibull  -gamma + u Q'(u) / (y0 - Q(u))
///   Gumbel   -u s'(u)/s(u) with s(u) = -u Q'(u)
double extract_b(const Distribution& dist, double u, BMethod method = BMethod::Auto);

/// Splice point of the representations: p vanishes and b is exact on (0, u0].
inline constexpr double kSplice = 0.5;

struct RepTriple {
  Regime regime = Regime::Gumbel;
  double gamma = 0.0;
  double c = 1.0;
  double d = 0.0;
  std::optional<double> endpoint;
  double u0 = kSplice;
  std::function<double(double)> p_fn;
  std::function<double(double)> b_fn;
  std::function<double(double)> s_fn;  // Gumbel only
  std::string dist_id;
};

RepTriple build_representation(const Distribution& dist);

/// Frechet: log Q(u); Weibull and Gumbel: Q(u).
double reconstruct_quantile(const RepTriple& rep, double u);

/// The quantity reconstruct_quantile should reproduce for `dist`.
double represented_quantile(const Distribution& dist, double u);

/// \int_u^1 b(t)/t dt for the representation's b.
double b_integral(const RepTriple& rep, double lo, double hi);

struct Residuals {
  double p_term = 0.0;
  double b_term = 0.0;
  double pb_term = 0.0;
  Regime regime = Regime::Gumbel;

  double combined() const { return pb_term; }
};

Residuals residuals(const RepTriple& rep, double u, double x);
Residuals residuals(const Distribution& dist, double u, double x);

/// First-order error normalized the way the regime's residuals are:
/// (Q(ux) - Q(u)) / s(u) - d_gamma(x), with s = gamma Q (Frechet),
/// -gamma (y0 - Q) (Weibull) or the representation's s (Gumbel).
double representation_first_order_error(const Distribution& dist, const RepTriple& rep, double u,
                                        double x);

/// u,regime,represented,reconstructed,rel_error,b_analytic,b_numeric
std::string rep_roundtrip_csv(const Distribution& dist, const std::vector<double>& u_grid);

/// The s/S/b/h table of every catalog family at its default parameters:
/// family,gamma,rho,u,x,s,S,b,h
std::string function_table_csv(const std::vector<double>& u_grid,
                               const std::vector<double>& x_grid);

}  // namespace evt
