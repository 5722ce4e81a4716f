#include "evt/soc.hpp"

#include <algorithm>
#include <cmath>

#include "evt/csv.hpp"

namespace evt {
namespace {

void check_point(double u, double x) {
  if (!(u > 0 && u < 1)) fail(ErrorCode::Domain, "u must lie in (0, 1)");
  if (!(x > 0)) fail(ErrorCode::Domain, "x must be positive");
  if (!(u * x < 1)) fail(ErrorCode::Domain, "ux must lie in (0, 1)");
}

Quad remainder_hp(const Distribution& dist, const AuxProfile& aux, double u, double x) {
  const Quad qu(u);
  const Quad qux = qu * Quad(x);
  Quad diff;
  if (dist.has_quantile_hp()) {
    diff = dist.quantile_hp(qux) - dist.quantile_hp(qu);
  } else {
    diff = Quad(dist.quantile(u * x)) - Quad(dist.quantile(u));
  }
  const Quad s = aux.s_hp ? aux.s_hp(qu) : Quad(aux.s_fn(u));
  if (!(s > 0)) fail(ErrorCode::Domain, "first-order normalizer must be positive");
  return diff / s - d_gamma<Quad>(dist.tail().gamma, Quad(x));
}

double remainder(const Distribution& dist, const AuxProfile& aux, double u, double x) {
  check_point(u, x);
  if (x == 1.0) return 0.0;
  return to_double(remainder_hp(dist, aux, u, x));
}

double ratio(const Distribution& dist, const AuxProfile& aux, double u, double x) {
  if (aux.degenerate) {
    fail(ErrorCode::Degenerate, "second order condition is degenerate for " + dist.id());
  }
  const double r = remainder(dist, aux, u, x);
  if (x == 1.0) return 0.0;
  return aux.orientation * r / aux.S_fn(u);
}

struct Ols {
  double slope = 0.0, intercept = 0.0, r2 = 0.0;
};

Ols least_squares(const std::vector<double>& xs, const std::vector<double>& ys) {
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  Ols f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r2 = syy > 0 ? std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0) : 1.0;
  return f;
}

}  // namespace

const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Converged: return "Converged";
    case Verdict::Degenerate: return "Degenerate";
    case Verdict::NotConverged: return "NotConverged";
  }
  return "NotConverged";
}

const char* to_string(SocClass c) {
  switch (c) {
    case SocClass::Regular: return "Regular";
    case SocClass::Degenerate: return "Degenerate";
    case SocClass::Unknown: return "Unknown";
  }
  return "Unknown";
}

double first_order_ratio(const Distribution& dist, double u, double x) {
  const AuxProfile aux = aux_profile(dist);
  check_point(u, x);
  if (x == 1.0) return 0.0;
  return to_double(remainder_hp(dist, aux, u, x) + d_gamma<Quad>(dist.tail().gamma, Quad(x)));
}

double soc_remainder(const Distribution& dist, double u, double x) {
  return remainder(dist, aux_profile(dist), u, x);
}

double soc_ratio(const Distribution& dist, double u, double x) {
  return ratio(dist, aux_profile(dist), u, x);
}

ConvergenceReport verify_soc(const Distribution& dist, const std::vector<double>& x_grid,
                             const std::vector<double>& u_grid, double tol) {
  if (u_grid.empty() || x_grid.empty()) fail(ErrorCode::Domain, "grids must be non-empty");
  for (std::size_t i = 1; i < u_grid.size(); ++i) {
    if (!(u_grid[i] < u_grid[i - 1])) fail(ErrorCode::Domain, "u grid must be strictly decreasing");
  }
  const AuxProfile aux = aux_profile(dist);
  ConvergenceReport rep;
  rep.dist_id = dist.id();
  rep.x_grid = x_grid;
  rep.u_grid = u_grid;
  rep.tol = tol;

  std::vector<std::vector<double>> rem(u_grid.size(), std::vector<double>(x_grid.size()));
  for (std::size_t i = 0; i < u_grid.size(); ++i) {
    for (std::size_t j = 0; j < x_grid.size(); ++j) {
      rem[i][j] = remainder(dist, aux, u_grid[i], x_grid[j]);
      rep.max_abs_remainder = std::max(rep.max_abs_remainder, std::fabs(rem[i][j]));
    }
  }
  const bool degenerate = aux.degenerate || rep.max_abs_remainder < kDegenerateThreshold;
  for (double x : x_grid) rep.target.push_back(degenerate ? kNaN : aux.h_fn(x));
  rep.ratios.assign(u_grid.size(), std::vector<double>(x_grid.size(), kNaN));
  rep.max_error_per_u.assign(u_grid.size(), kNaN);
  if (degenerate) {
    rep.verdict = Verdict::Degenerate;
    return rep;
  }

  for (std::size_t i = 0; i < u_grid.size(); ++i) {
    const double S = aux.S_fn(u_grid[i]);
    double worst = 0.0;
    for (std::size_t j = 0; j < x_grid.size(); ++j) {
      const double r = x_grid[j] == 1.0 ? 0.0 : aux.orientation * rem[i][j] / S;
      rep.ratios[i][j] = r;
      const double err = std::fabs(r - rep.target[j]);
      worst = std::isnan(err) ? err : std::max(worst, err);
    }
    rep.max_error_per_u[i] = worst;
  }

  const std::size_t n = u_grid.size();
  bool ok = rep.max_error_per_u.back() <= tol;
  for (std::size_t i = n >= 3 ? n - 2 : 1; i < n && ok; ++i) {
    if (rep.max_error_per_u[i] > rep.max_error_per_u[i - 1] + 1e-12) ok = false;
  }
  rep.verdict = ok ? Verdict::Converged : Verdict::NotConverged;

  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < n; ++i) {
    if (rep.max_error_per_u[i] > 1e-13) {
      lx.push_back(std::log(u_grid[i]));
      ly.push_back(std::log(rep.max_error_per_u[i]));
    }
  }
  if (lx.size() >= 4) rep.fitted_rate = least_squares(lx, ly).slope;
  return rep;
}

ConvergenceReport verify_soc(const Distribution& dist) {
  const SocDefaults d = soc_defaults(dist);
  return verify_soc(dist, d.x_grid, default_u_grid(dist), d.tol);
}

std::string report_csv(const ConvergenceReport& report) {
  std::string out = csv::row({"u", "x", "ratio", "target_h", "abs_error"});
  for (std::size_t i = 0; i < report.u_grid.size(); ++i) {
    for (std::size_t j = 0; j < report.x_grid.size(); ++j) {
      const double r = report.ratios[i][j];
      const double t = report.target[j];
      out += csv::row({csv::format(report.u_grid[i]), csv::format(report.x_grid[j]),
                       csv::format(r), csv::format(t), csv::format(std::fabs(r - t))});
    }
  }
  return out;
}

std::vector<double> default_rho_grid() { return {1e-3, 1e-4, 1e-5, 1e-6}; }

RhoFit estimate_rho(const Distribution& dist, const std::vector<double>& u_grid) {
  const AuxProfile aux = aux_profile(dist);
  std::vector<double> lx, ly;
  int sign = 0;
  for (double u : u_grid) {
    const double r = remainder(dist, aux, u, kRhoAnchor);
    if (!(std::fabs(r) > kDegenerateThreshold)) continue;
    const int s = r > 0 ? 1 : -1;
    if (sign != 0 && s != sign) {
      fail(ErrorCode::SignChange, "remainder changes sign across the u grid");
    }
    sign = s;
    lx.push_back(std::log(u));
    ly.push_back(std::log(std::fabs(r)));
  }
  if (lx.size() < 4) {
    fail(ErrorCode::InsufficientPoints,
         "rate fit needs at least 4 non-degenerate remainders, got " + std::to_string(lx.size()));
  }
  const Ols f = least_squares(lx, ly);
  RhoFit fit;
  fit.slope = f.slope;
  fit.intercept = f.intercept;
  fit.r_squared = f.r2;
  fit.rho_hat = -f.slope;
  fit.points = static_cast<int>(lx.size());
  return fit;
}

SocClass classify_soc(const Distribution& dist) {
  try {
    const ConvergenceReport rep = verify_soc(dist);
    if (rep.verdict == Verdict::Degenerate) return SocClass::Degenerate;
    if (rep.verdict == Verdict::Converged) return SocClass::Regular;
  } catch (const Error&) {
  }
  return SocClass::Unknown;
}

}  // namespace evt
