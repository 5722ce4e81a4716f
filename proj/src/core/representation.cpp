#include "evt/representation.hpp"

#include <cmath>

#include "evt/csv.hpp"
#include "evt/normal.hpp"

namespace evt {
namespace {

// Steps in w = log u for the extended-precision stencils.
constexpr double kHpStep1 = 1e-6;
constexpr double kHpStep2 = 1e-4;

template <class F>
Quad hp_log_derivative(F&& f, double u, double h) {
  if (!(u > 0) || u * std::exp(2 * h) >= 1.0) {
    fail(ErrorCode::Differentiation, "finite-difference stencil leaves (0, 1)");
  }
  const Quad w = log(Quad(u));
  auto at = [&](double dw) { return f(exp(w + Quad(dw))); };
  const Quad d_h = (at(h) - at(-h)) / (2 * h);
  const Quad d_2h = (at(2 * h) - at(-2 * h)) / (4 * h);
  return (4 * d_h - d_2h) / 3;
}

template <class F>
Quad hp_log_second_derivative(F&& f, double u, double h) {
  if (!(u > 0) || u * std::exp(2 * h) >= 1.0) {
    fail(ErrorCode::Differentiation, "finite-difference stencil leaves (0, 1)");
  }
  const Quad w = log(Quad(u));
  auto at = [&](double dw) { return f(exp(w + Quad(dw))); };
  const Quad f0 = at(0.0);
  const Quad d_h = (at(h) - 2 * f0 + at(-h)) / (h * h);
  const Quad d_2h = (at(2 * h) - 2 * f0 + at(-2 * h)) / (4 * h * h);
  return (4 * d_h - d_2h) / 3;
}

// K(u) = log Q(u) (Frechet) or log(y0 - Q(u)) (Weibull).
double log_scale(const Distribution& dist, Regime regime, double u) {
  const double q = dist.quantile(u);
  if (regime == Regime::Frechet) {
    if (!(q > 0)) fail(ErrorCode::Domain, "Frechet representation needs Q(u) > 0");
    return std::log(q);
  }
  const double gap = *dist.tail().endpoint - q;
  if (!(gap > 0)) fail(ErrorCode::Domain, "quantile is not below the endpoint");
  return std::log(gap);
}

Quad log_scale_hp(const Distribution& dist, Regime regime, const Quad& u) {
  const Quad q = dist.quantile_hp(u);
  if (regime == Regime::Frechet) return log(q);
  return log(Quad(*dist.tail().endpoint) - q);
}

// dK/dw, analytic when the quantile derivative is known.
std::optional<double> analytic_log_scale_slope(const Distribution& dist, Regime regime, double u) {
  const auto dq = dist.quantile_derivative(u);
  if (!dq) return std::nullopt;
  const double q = dist.quantile(u);
  if (regime == Regime::Frechet) return u * *dq / q;
  return -u * *dq / (*dist.tail().endpoint - q);
}

// sigma(u) = -u Q'(u) = -dQ/dw.
double sigma(const Distribution& dist, double u) {
  if (auto dq = dist.quantile_derivative(u)) return -u * *dq;
  if (dist.has_quantile_hp()) {
    return -to_double(hp_log_derivative([&](const Quad& t) { return dist.quantile_hp(t); }, u,
                                        kHpStep1));
  }
  return -log_derivative([&](double t) { return dist.quantile(t); }, u);
}

// Mean of sigma over (0, u): u^{-1} \int_0^u sigma(t) dt = \int_0^inf sigma(u e^-v) e^-v dv.
double mean_sigma(const Distribution& dist, double u) {
  return integrate([&](double v) { return sigma(dist, u * std::exp(-v)) * std::exp(-v); }, 0.0,
                   60.0, 1e-13);
}

double burr_like_b(double scale, double v) { return scale * v / (1.0 - v); }

}  // namespace

std::optional<double> analytic_b(const Distribution& dist, double u) {
  if (!(u > 0 && u < 1)) fail(ErrorCode::Domain, "extract_b requires 0 < u < 1");
  const auto& p = dist.params();
  if (dist.view() == View::LogG) {
    switch (dist.family()) {
      case Family::Burr: {
        const double rho = p[1].second;
        return burr_like_b(rho, std::pow(u, -rho));
      }
      case Family::SinghMaddala: {
        const double c = p[2].second;
        return burr_like_b(-1.0 / c, std::pow(u, 1.0 / c));
      }
      case Family::Exponential: return 1.0 / std::log(u);
      case Family::Lognormal: {
        const double z = normal::upper_quantile(u);
        return -1.0 + u * z / normal::pdf(z);
      }
      default: return std::nullopt;
    }
  }
  switch (dist.family()) {
    case Family::Burr: {
      const double g = p[0].second, rho = p[1].second;
      return burr_like_b(g, std::pow(u, -rho));
    }
    case Family::ReversedBurr: {
      const double g = p[0].second, rho = p[1].second;
      return burr_like_b(-g, std::pow(u, -rho));
    }
    case Family::SinghMaddala: {
      const double b = p[1].second, c = p[2].second;
      return burr_like_b(1.0 / (b * c), std::pow(u, 1.0 / c));
    }
    case Family::LogSinghMaddala: {
      const double c = p[2].second;
      return burr_like_b(-1.0 / c, std::pow(u, 1.0 / c));
    }
    case Family::Exponential: return 0.0;
    case Family::LogExponential: return 1.0 / std::log(u);
    case Family::Normal: {
      const double z = normal::upper_quantile(u);
      return -1.0 + u * z / normal::pdf(z);
    }
    case Family::Lognormal: {
      const double z = normal::upper_quantile(u);
      return -1.0 + u * (1.0 + z) / normal::pdf(z);
    }
    case Family::Logistic: return -u / (2.0 - u);
    case Family::Custom: return std::nullopt;
  }
  return std::nullopt;
}

double numeric_b(const Distribution& dist, double u) {
  if (!(u > 0 && u < 1)) fail(ErrorCode::Domain, "extract_b requires 0 < u < 1");
  const Regime regime = dist.regime();
  const double gamma = dist.tail().gamma;
  const bool hp = dist.has_quantile_hp();
  if (regime == Regime::Gumbel) {
    if (hp) {
      auto q = [&](const Quad& t) { return dist.quantile_hp(t); };
      const Quad q1 = hp_log_derivative(q, u, kHpStep1);
      const Quad q2 = hp_log_second_derivative(q, u, kHpStep2);
      return to_double(-q2 / q1);
    }
    auto q = [&](double t) { return dist.quantile(t); };
    return -log_second_derivative(q, u) / log_derivative(q, u);
  }
  if (hp) {
    const Quad slope = hp_log_derivative(
        [&](const Quad& t) { return log_scale_hp(dist, regime, t); }, u, kHpStep1);
    return to_double(-Quad(gamma) - slope);
  }
  return -gamma - log_derivative([&](double t) { return log_scale(dist, regime, t); }, u);
}

double extract_b(const Distribution& dist, double u, BMethod method) {
  if (method != BMethod::Numeric) {
    if (auto b = analytic_b(dist, u)) return *b;
    if (method == BMethod::Analytic) {
      fail(ErrorCode::Unsupported, "no closed-form b for " + dist.id());
    }
  }
  return numeric_b(dist, u);
}

// ---------------------------------------------------------------------------

double represented_quantile(const Distribution& dist, double u) {
  const double q = dist.quantile(u);
  if (dist.regime() == Regime::Frechet) {
    if (!(q > 0)) fail(ErrorCode::Domain, "Frechet representation needs Q(u) > 0");
    return std::log(q);
  }
  return q;
}

RepTriple build_representation(const Distribution& dist) {
  RepTriple rep;
  rep.regime = dist.regime();
  rep.gamma = dist.tail().gamma;
  rep.dist_id = dist.id();
  const double u0 = rep.u0;

  if (rep.regime == Regime::Gumbel) {
    const double c = mean_sigma(dist, u0);
    rep.c = c;
    const double d = dist.quantile(u0) + c * (1.0 + std::log(u0));
    rep.d = d;
    rep.p_fn = [dist, c, d, u0](double u) {
      if (u <= u0) return 0.0;
      return (d - c * std::log(u) - dist.quantile(u)) / c - 1.0;
    };
    rep.s_fn = [dist, c, u0, p = rep.p_fn](double u) {
      return u <= u0 ? mean_sigma(dist, u) : c * (1.0 + p(u));
    };
    rep.b_fn = [dist, u0](double u) {
      if (u > u0) return 0.0;
      return 1.0 - sigma(dist, u) / mean_sigma(dist, u);
    };
    return rep;
  }

  const Regime regime = rep.regime;
  const double gamma = rep.gamma;
  if (regime == Regime::Weibull) rep.endpoint = dist.tail().endpoint;
  const double log_c = log_scale(dist, regime, u0) + gamma * std::log(u0);
  rep.c = std::exp(log_c);
  rep.p_fn = [dist, regime, gamma, log_c, u0](double u) {
    if (u <= u0) return 0.0;
    return std::expm1(log_scale(dist, regime, u) - log_c + gamma * std::log(u));
  };
  rep.b_fn = [dist, regime, gamma, u0](double u) {
    if (u > u0) return 0.0;
    if (auto b = analytic_b(dist, u)) return *b;
    if (auto slope = analytic_log_scale_slope(dist, regime, u)) return -gamma - *slope;
    return numeric_b(dist, u);
  };
  return rep;
}

double b_integral(const RepTriple& rep, double lo, double hi) {
  const double top = std::min(hi, rep.u0);
  if (lo >= top) return 0.0;
  return integrate_dt_over_t(rep.b_fn, lo, top);
}

double reconstruct_quantile(const RepTriple& rep, double u) {
  if (!(u > 0 && u < 1)) fail(ErrorCode::Domain, "reconstruct_quantile requires 0 < u < 1");
  switch (rep.regime) {
    case Regime::Frechet:
    case Regime::Weibull: {
      const double k = std::log(rep.c) + std::log1p(rep.p_fn(u)) - rep.gamma * std::log(u) +
                       b_integral(rep, u, 1.0);
      return rep.regime == Regime::Frechet ? k : *rep.endpoint - std::exp(k);
    }
    case Regime::Gumbel: {
      double tail = 0.0;
      if (u < rep.u0) tail = integrate_dt_over_t(rep.s_fn, u, rep.u0);
      tail += rep.c * -std::log(std::max(u, rep.u0));
      return rep.d - rep.s_fn(u) + tail;
    }
  }
  return kNaN;
}

Residuals residuals(const RepTriple& rep, double u, double x) {
  if (!(u > 0 && u < 1) || !(x > 0) || !(u * x < 1)) {
    fail(ErrorCode::Domain, "residuals require 0 < u < 1 and 0 < ux < 1");
  }
  Residuals r;
  r.regime = rep.regime;
  if (x == 1.0) return r;
  const double ux = u * x;
  if (rep.regime == Regime::Gumbel) {
    const double su = rep.s_fn(u);
    const double sux = rep.s_fn(ux);
    r.p_term = 1.0 - (1.0 + rep.p_fn(ux)) / (1.0 + rep.p_fn(u));
    const double lo = std::min(u, ux), hi = std::max(u, ux);
    double drift = integrate_dt_over_t([&](double t) { return rep.s_fn(t) / su - 1.0; }, lo, hi);
    if (ux > u) drift = -drift;
    r.b_term = (1.0 - sux / su) - r.p_term + drift;
    r.pb_term = r.p_term + r.b_term;
    return r;
  }
  const double g = rep.gamma;
  const double xg = std::pow(x, -g);
  double integral = ux < u ? b_integral(rep, ux, u) : -b_integral(rep, u, ux);
  const double e = std::exp(integral);
  const double pux = rep.p_fn(ux), pu = rep.p_fn(u);
  r.p_term = (xg * pux * e - pu) / g;
  r.b_term = xg * std::expm1(integral) / g;
  r.pb_term = r.p_term + r.b_term;
  return r;
}

Residuals residuals(const Distribution& dist, double u, double x) {
  return residuals(build_representation(dist), u, x);
}

double representation_first_order_error(const Distribution& dist, const RepTriple& rep, double u,
                                        double x) {
  const double g = rep.gamma;
  const bool hp = dist.has_quantile_hp();
  switch (rep.regime) {
    case Regime::Frechet:
    case Regime::Weibull: {
      if (hp) {
        const Quad qu = dist.quantile_hp(Quad(u));
        const Quad qux = dist.quantile_hp(Quad(u) * Quad(x));
        const Quad s = rep.regime == Regime::Frechet ? Quad(g) * qu
                                                     : Quad(-g) * (Quad(*rep.endpoint) - qu);
        return to_double((qux - qu) / s - d_gamma<Quad>(g, Quad(x)));
      }
      const double qu = dist.quantile(u);
      const double s = rep.regime == Regime::Frechet ? g * qu : -g * (*rep.endpoint - qu);
      return (dist.quantile(u * x) - qu) / s - d_gamma(g, x);
    }
    case Regime::Gumbel: {
      const double s = rep.s_fn(u);
      if (hp) {
        const Quad diff = dist.quantile_hp(Quad(u) * Quad(x)) - dist.quantile_hp(Quad(u));
        return to_double(diff / Quad(s) + log(Quad(x)));
      }
      return (dist.quantile(u * x) - dist.quantile(u)) / s + std::log(x);
    }
  }
  return kNaN;
}

std::string rep_roundtrip_csv(const Distribution& dist, const std::vector<double>& u_grid) {
  const RepTriple rep = build_representation(dist);
  std::string out = csv::row({"u", "regime", "represented", "reconstructed", "rel_error",
                              "b_analytic", "b_numeric"});
  for (double u : u_grid) {
    const double q = represented_quantile(dist, u);
    const double r = reconstruct_quantile(rep, u);
    const auto ba = analytic_b(dist, u);
    out += csv::row({csv::format(u), to_string(rep.regime), csv::format(q), csv::format(r),
                     csv::format(std::fabs(r - q) / (1.0 + std::fabs(q))),
                     csv::format(ba ? *ba : kNaN), csv::format(numeric_b(dist, u))});
  }
  return out;
}

std::string function_table_csv(const std::vector<double>& u_grid,
                               const std::vector<double>& x_grid) {
  std::string out = csv::row({"family", "gamma", "rho", "u", "x", "s", "S", "b", "h"});
  for (const auto& desc : list_catalog()) {
    const Distribution dist = Distribution::from_params(desc.family, desc.default_params);
    const AuxProfile aux = aux_profile(dist);
    for (double u : u_grid) {
      const double s = aux.s_fn(u);
      const double S = aux.degenerate ? kNaN : aux.S_fn(u);
      const double b = extract_b(dist, u);
      for (double x : x_grid) {
        const double h = aux.degenerate ? kNaN : aux.h_fn(x);
        out += csv::row({desc.name, csv::format(dist.tail().gamma), csv::format(dist.tail().rho),
                         csv::format(u), csv::format(x), csv::format(s), csv::format(S),
                         csv::format(b), csv::format(h)});
      }
    }
  }
  return out;
}

}  // namespace evt
