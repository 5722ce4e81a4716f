#include "evt/numeric.hpp"

#include <cmath>

namespace evt {

double h_star(double gamma, double rho, double x) {
  if (!(x > 0)) fail(ErrorCode::Domain, "h_star requires x > 0");
  if (rho > 0) fail(ErrorCode::Domain, "h_star requires rho <= 0");
  const double lx = std::log(x);
  const bool rho_zero = std::fabs(rho) < kGammaZero;
  const bool gamma_zero = std::fabs(gamma) < kGammaZero;
  if (!rho_zero) {
    const double g = gamma + rho;
    if (std::fabs(g) < kGammaZero) return lx;
    return std::expm1(g * lx) / g;
  }
  if (!gamma_zero) return std::exp(gamma * lx) * lx / gamma;
  return lx * lx / 2;
}

StarNormalizers star_normalizers(double a, double A, double gamma, double rho) {
  StarNormalizers out;
  const bool rho_zero = std::fabs(rho) < kGammaZero;
  const bool gamma_zero = std::fabs(gamma) < kGammaZero;
  if (rho > 0 && !rho_zero) {
    out.a_star = a * (1 - A / rho);
    out.A_star = A / rho;
  } else if (rho_zero && !gamma_zero) {
    out.a_star = a * (1 - A / gamma);
    out.A_star = A;
  } else if (std::fabs(gamma - rho) < kGammaZero) {
    out.a_star = a;
    out.A_star = rho_zero ? A : 0.0;
  }
  // The case conditions only cover rho > 0, which contradicts rho <= 0.
  out.warning = rho < 0 && !rho_zero;
  return out;
}

std::vector<double> geometric_grid(double first, double last, int n) {
  if (n < 1 || !(first > 0) || !(last > 0)) fail(ErrorCode::Domain, "invalid geometric grid");
  std::vector<double> grid(static_cast<std::size_t>(n));
  if (n == 1) {
    grid[0] = first;
    return grid;
  }
  const double lf = std::log10(first);
  const double ll = std::log10(last);
  for (int i = 0; i < n; ++i) {
    grid[static_cast<std::size_t>(i)] = std::pow(10.0, lf + (ll - lf) * i / (n - 1));
  }
  grid.front() = first;
  grid.back() = last;
  return grid;
}

}  // namespace evt
