#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "evt/errors.hpp"
#include "evt/soc.hpp"
#include "support.hpp"

using namespace evt;
using evt::test::by_name;

TEST_CASE("second order ratios match the high-precision reference") {
  for (const auto& o : test::kRatioOracle) {
    CAPTURE(o.family);
    CAPTURE(o.u);
    CAPTURE(o.x);
    const Distribution d = by_name(o.family);
    const std::string name = o.family;
    const double tol = (name == "normal" || name == "lognormal") ? 1e-5 : 1e-9;
    CHECK(soc_ratio(d, o.u, o.x) == doctest::Approx(o.ratio).epsilon(tol));
    CHECK(aux_profile(d).h_fn(o.x) == doctest::Approx(o.h).epsilon(1e-14));
  }
}

TEST_CASE("Burr(1,-1) ratio equals h exactly") {
  const Distribution d = Distribution::burr(1, -1);
  for (double u : {1e-2, 1e-4, 1e-6, 1e-8}) {
    for (double x : {0.5, 0.8, 2.0, 4.0}) {
      CHECK(std::fabs(soc_ratio(d, u, x) - aux_profile(d).h_fn(x)) <= 1e-12);
    }
  }
}

TEST_CASE("ratio error shrinks as u decreases across parameters") {
  for (double g : {0.5, 1.0, 2.0}) {
    for (double rho : {-0.5, -1.0, -2.0}) {
      CAPTURE(g);
      CAPTURE(rho);
      for (const Distribution& d : {Distribution::burr(g, rho), Distribution::reversed_burr(g, rho)}) {
        const double h = aux_profile(d).h_fn(2.0);
        double prev = INFINITY;
        for (double u : {1e-2, 1e-4, 1e-6}) {
          const double err = std::fabs(soc_ratio(d, u, 2.0) - h);
          CHECK(err <= prev + 1e-12);
          prev = err;
        }
        CHECK(prev <= 1e-2);
      }
    }
  }
}

TEST_CASE("first order ratio and remainder are consistent") {
  const Distribution d = Distribution::singh_maddala(1, 2, 1);
  const double u = 1e-4, x = 2.0;
  const double first = first_order_ratio(d, u, x);
  const double direct = (d.quantile(u * x) - d.quantile(u)) / aux_profile(d).s_fn(u);
  CHECK(first == doctest::Approx(direct).epsilon(1e-12));
  CHECK(soc_remainder(d, u, x) == doctest::Approx(first - d_gamma(0.5, x)).epsilon(1e-9));
  CHECK(first_order_ratio(d, u, 1.0) == 0.0);
}

TEST_CASE("exponential is degenerate") {
  const Distribution d = Distribution::exponential();
  for (double u : geometric_grid(1e-12, 0.2, 25)) {
    for (double x : {0.25, 0.5, 2.0, 4.0}) CHECK(std::fabs(soc_remainder(d, u, x)) <= 1e-14);
  }
  CHECK_THROWS_AS(soc_ratio(d, 1e-3, 2.0), Error);
  const auto rep = verify_soc(d);
  CHECK(rep.verdict == Verdict::Degenerate);
  CHECK(classify_soc(d) == SocClass::Degenerate);
}

TEST_CASE("default verification converges for every non-degenerate family") {
  for (const char* name : test::kFamilies) {
    if (std::string(name) == "exponential") continue;
    CAPTURE(name);
    const auto rep = verify_soc(by_name(name));
    CHECK(rep.verdict == Verdict::Converged);
    CHECK(rep.max_error_per_u.back() <= rep.tol);
    CHECK(rep.ratios.size() == rep.u_grid.size());
    CHECK(classify_soc(by_name(name)) == SocClass::Regular);
  }
}

TEST_CASE("tight tolerance yields NotConverged") {
  const auto d = Distribution::singh_maddala(1, 2, 1);
  const auto rep = verify_soc(d, {0.5, 2.0}, {1e-2, 1e-3, 1e-4, 1e-5}, 1e-12);
  CHECK(rep.verdict == Verdict::NotConverged);
  REQUIRE(rep.fitted_rate.has_value());
  CHECK(*rep.fitted_rate == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("verification validates grids") {
  const auto d = Distribution::burr(1, -1);
  CHECK_THROWS_AS(verify_soc(d, {}, {1e-2}, 1e-3), Error);
  CHECK_THROWS_AS(verify_soc(d, {2.0}, {1e-3, 1e-2}, 1e-3), Error);
  CHECK_THROWS_AS(verify_soc(d, {-1.0}, {1e-2}, 1e-3), Error);
  CHECK_THROWS_AS(soc_ratio(d, 1.5, 2.0), Error);
}

TEST_CASE("report csv is canonical") {
  const auto rep = verify_soc(Distribution::burr(1, -1), {0.5, 2.0}, {1e-2, 1e-3}, 1e-3);
  const std::string csv = report_csv(rep);
  CHECK(csv.rfind("u,x,ratio,target_h,abs_error\n0.01,0.5,", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
}

TEST_CASE("rho estimation recovers the true rho") {
  for (double rho : {-0.5, -1.0, -2.0}) {
    CAPTURE(rho);
    CHECK(estimate_rho(Distribution::burr(1, rho), default_rho_grid()).rho_hat ==
          doctest::Approx(rho).epsilon(0.01));
    CHECK(estimate_rho(Distribution::reversed_burr(1, rho), default_rho_grid()).rho_hat ==
          doctest::Approx(rho).epsilon(0.01));
  }
  const auto fit = estimate_rho(Distribution::logistic(), default_rho_grid());
  CHECK(fit.rho_hat == doctest::Approx(-1).epsilon(0.01));
  CHECK(fit.r_squared > 0.999);
  CHECK(fit.points == 4);
  CHECK_THROWS_AS(estimate_rho(Distribution::burr(1, -1), {1e-3}), Error);
}
