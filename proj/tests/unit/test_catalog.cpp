#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "evt/catalog.hpp"
#include "evt/errors.hpp"
#include "support.hpp"

using namespace evt;
using evt::test::by_name;
using evt::test::rel_err;

TEST_CASE("quantiles match the high-precision reference") {
  for (const auto& o : test::kQuantileOracle) {
    CAPTURE(o.family);
    CAPTURE(o.u);
    const Distribution d = by_name(o.family);
    CHECK(rel_err(d.quantile(o.u), o.q) <= 1e-13);
    if (d.has_quantile_hp()) {
      CHECK(rel_err(to_double(d.quantile_hp(Quad(o.u))), o.q) <= 1e-15);
    }
  }
}

TEST_CASE("quantiles decrease in u") {
  for (const char* name : test::kFamilies) {
    CAPTURE(name);
    const Distribution d = by_name(name);
    const auto grid = geometric_grid(1e-12, 0.9, 60);
    for (std::size_t i = 1; i < grid.size(); ++i) {
      CHECK(d.quantile(grid[i - 1]) > d.quantile(grid[i]));
    }
  }
}

TEST_CASE("analytic quantile derivative matches a central difference") {
  for (const char* name : test::kFamilies) {
    CAPTURE(name);
    const Distribution d = by_name(name);
    for (double u : {1e-2, 1e-3}) {
      const auto dq = d.quantile_derivative(u);
      REQUIRE(dq.has_value());
      const double h = u * 1e-5;
      const double fd = (d.quantile(u + h) - d.quantile(u - h)) / (2 * h);
      CHECK(rel_err(*dq, fd) <= 1e-6);
    }
  }
}

TEST_CASE("parameter validation names the offending parameter") {
  try {
    (void)Distribution::from_params(Family::Burr, {{"gamma", 1.0}});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedParameter);
    CHECK(std::string(e.what()).find("rho") != std::string::npos);
  }
  CHECK_THROWS_AS(Distribution::burr(-1, -1), Error);
  CHECK_THROWS_AS(Distribution::burr(1, 0.5), Error);
  CHECK_THROWS_AS(Distribution::singh_maddala(1, 0, 1), Error);
  CHECK_THROWS_AS(
      Distribution::from_params(Family::Burr, {{"gamma", 1.0}, {"rho", -1.0}, {"zeta", 2.0}}),
      Error);
  CHECK_THROWS_AS(Distribution::from_params(Family::Exponential, {{"gamma", 1.0}}), Error);
}

TEST_CASE("quantile domain is the open unit interval") {
  const Distribution d = Distribution::burr(1, -1);
  for (double u : {0.0, 1.0, -0.5, 2.0, std::nan("")}) {
    CHECK_THROWS_AS(d.quantile(u), Error);
  }
}

TEST_CASE("family names and aliases") {
  CHECK(family_from_string("Burr") == Family::Burr);
  CHECK(family_from_string("reversed-burr") == Family::ReversedBurr);
  CHECK(family_from_string("sm") == Family::SinghMaddala);
  CHECK(family_from_string("log_sm") == Family::LogSinghMaddala);
  CHECK(family_from_string("logexpo") == Family::LogExponential);
  CHECK_FALSE(family_from_string("cauchy").has_value());
}

TEST_CASE("tail parameters and regimes") {
  CHECK(Distribution::burr(0.5, -2).tail().gamma == doctest::Approx(0.5));
  CHECK(Distribution::burr(0.5, -2).regime() == Regime::Frechet);
  const Distribution rb = Distribution::reversed_burr(2, -1);
  CHECK(rb.tail().gamma == doctest::Approx(-2));
  CHECK(rb.tail().endpoint == 0.0);
  CHECK(rb.regime() == Regime::Weibull);
  CHECK(Distribution::singh_maddala(1, 2, 1).tail().gamma == doctest::Approx(0.5));
  CHECK(Distribution::singh_maddala(1, 2, 1).tail().rho == doctest::Approx(-1));
  CHECK(Distribution::normal().regime() == Regime::Gumbel);
  CHECK_FALSE(Distribution::exponential().tail().has_rho());
  CHECK(Distribution::logistic().tail().rho == doctest::Approx(-1));
}

TEST_CASE("log views") {
  const Distribution burr = Distribution::burr(1, -1);
  const Distribution g = burr.log_view();
  CHECK(g.view() == View::LogG);
  CHECK(g.id() == "log[burr(gamma=1,rho=-1)]");
  for (double u : {1e-2, 1e-5}) {
    CHECK(rel_err(g.quantile(u), std::log(burr.quantile(u))) <= 1e-14);
  }
  CHECK(Distribution::lognormal().log_view().quantile(1e-3) ==
        doctest::Approx(Distribution::normal().quantile(1e-3)).epsilon(1e-14));
  CHECK_THROWS_AS(Distribution::normal().log_view(), Error);
  CHECK_THROWS_AS(g.log_view(), Error);
}

TEST_CASE("auxiliary profiles") {
  CHECK(aux_profile(Distribution::exponential()).degenerate);
  const AuxProfile p = aux_profile(Distribution::burr(1, -1));
  CHECK(p.h_fn(2.0) == doctest::Approx(-0.5));
  CHECK(p.S_fn(1e-3) == doctest::Approx(1.0 / 999));
  CHECK(aux_profile(Distribution::logistic()).orientation == -1);
  CHECK(aux_profile(Distribution::log_exponential()).orientation == -1);
  CHECK(has_aux_profile(Distribution::normal()));
}

TEST_CASE("d_gamma is continuous through gamma = 0") {
  for (double x : {0.3, 0.5, 2.0, 7.0}) {
    CHECK(d_gamma(0.0, x) == doctest::Approx(-std::log(x)).epsilon(1e-15));
    CHECK(d_gamma(1e-9, x) == doctest::Approx(-std::log(x)).epsilon(1e-8));
    CHECK(d_gamma(1.0, x) == doctest::Approx(1.0 / x - 1).epsilon(1e-15));
    CHECK(d_gamma(-2.0, x) == doctest::Approx((x * x - 1) / -2).epsilon(1e-15));
  }
  CHECK(d_gamma(0.5, 1.0) == 0.0);
  CHECK_THROWS_AS(d_gamma(1.0, 0.0), Error);
}

TEST_CASE("catalog listing and csv") {
  CHECK(list_catalog().size() == 9);
  std::istringstream csv(catalog_csv());
  std::string line;
  int rows = 0;
  std::getline(csv, line);
  CHECK(line == "family,param_names,gamma_formula,rho_formula,s_formula,S_formula,h_formula,"
                "degenerate");
  while (std::getline(csv, line)) ++rows;
  CHECK(rows == 9);
  CHECK(describe(Family::Exponential).degenerate);
  CHECK(describe(Family::SinghMaddala).param_names == std::vector<std::string>{"a", "b", "c"});

  std::istringstream defaults(defaults_csv());
  std::getline(defaults, line);
  CHECK(line == "version,family,u_first,u_last,u_points,tol,x_grid");
  std::getline(defaults, line);
  CHECK(line.rfind(std::string(kDefaultsVersion) + ",Burr,", 0) == 0);
}

TEST_CASE("default grids") {
  const auto u = default_u_grid(Distribution::burr(1, -1));
  REQUIRE(u.size() == 7);
  CHECK(u.front() == doctest::Approx(1e-2));
  CHECK(u.back() == doctest::Approx(1e-8));
  for (std::size_t i = 1; i < u.size(); ++i) CHECK(u[i] < u[i - 1]);
  CHECK(default_x_grid(Distribution::normal()).size() == 4);
  CHECK(default_x_grid(Distribution::burr(1, -1)).size() == 5);
}
