#pragma once

#include <optional>
#include <string>
#include <vector>

#include "evt/catalog.hpp"

namespace evt {

/// (Q(ux) - Q(u)) / s(u), with the difference formed in extended precision
/// whenever the family supports it.
double first_order_ratio(const Distribution& dist, double u, double x);

/// first_order_ratio - d_gamma(x): the raw second-order remainder.
double soc_remainder(const Distribution& dist, double u, double x);

/// orientation * remainder / S(u); tends to h(x).
double soc_ratio(const Distribution& dist, double u, double x);

enum class Verdict { Converged, Degenerate, NotConverged };
const char* to_string(Verdict verdict);

inline constexpr double kDegenerateThreshold = 1e-14;

struct ConvergenceReport {
  std::string dist_id;
  std::vector<double> x_grid;
  std::vector<double> u_grid;
  std::vector<std::vector<double>> ratios;  // [u][x]
  std::vector<double> target;
  std::vector<double> max_error_per_u;
  double max_abs_remainder = 0.0;
  double tol = 0.0;
  Verdict verdict = Verdict::NotConverged;
  std::optional<double> fitted_rate;
};

ConvergenceReport verify_soc(const Distribution& dist, const std::vector<double>& x_grid,
                             const std::vector<double>& u_grid, double tol);
/// Family defaults for both grids and the tolerance.
ConvergenceReport verify_soc(const Distribution& dist);

/// u,x,ratio,target_h,abs_error
std::string report_csv(const ConvergenceReport& report);

struct RhoFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double rho_hat = 0.0;
  int points = 0;
};

inline constexpr double kRhoAnchor = 2.0;
std::vector<double> default_rho_grid();

RhoFit estimate_rho(const Distribution& dist, const std::vector<double>& u_grid);

enum class SocClass { Regular, Degenerate, Unknown };
const char* to_string(SocClass c);
SocClass classify_soc(const Distribution& dist);

}  // namespace evt
