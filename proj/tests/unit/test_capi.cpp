#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "evt/evt.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  evt_string_free(s);
  return out;
}

evt_dist* burr(double g, double rho) {
  const char* names[] = {"gamma", "rho"};
  const double values[] = {g, rho};
  evt_dist* d = nullptr;
  REQUIRE(evt_dist_create("burr", names, values, 2, &d) == EVT_OK);
  return d;
}

}  // namespace

TEST_CASE("distribution handles") {
  evt_dist* d = burr(1, -1);
  char* id = nullptr;
  REQUIRE(evt_dist_id(d, &id) == EVT_OK);
  CHECK(take(id) == "burr(gamma=1,rho=-1)");
  double q = 0;
  CHECK(evt_quantile(d, 0.01, &q) == EVT_OK);
  CHECK(q == doctest::Approx(99.0));
  double g = 0, rho = 0, ep = 0;
  int has_ep = -1;
  CHECK(evt_dist_tail(d, &g, &rho, &has_ep, &ep) == EVT_OK);
  CHECK(g == 1.0);
  CHECK(rho == -1.0);
  CHECK(has_ep == 0);
  CHECK(std::isnan(ep));

  evt_dist* lv = nullptr;
  CHECK(evt_dist_log_view(d, &lv) == EVT_OK);
  CHECK(evt_quantile(lv, 0.01, &q) == EVT_OK);
  CHECK(q == doctest::Approx(std::log(99.0)));
  evt_dist_free(lv);
  evt_dist_free(d);
  evt_dist_free(nullptr);

  char* defaults = nullptr;
  CHECK(evt_dist_default_params("singhmaddala", &defaults) == EVT_OK);
  CHECK(take(defaults) == "a=1;b=2;c=1");
}

TEST_CASE("errors map to status codes") {
  const char* names[] = {"gamma"};
  const double values[] = {1};
  evt_dist* d = nullptr;
  CHECK(evt_dist_create("burr", names, values, 1, &d) == EVT_E_UNSUPPORTED_PARAMETER);
  CHECK(d == nullptr);
  CHECK(std::string(evt_last_error()).find("rho") != std::string::npos);
  CHECK(evt_dist_create("nosuch", nullptr, nullptr, 0, &d) == EVT_E_UNSUPPORTED_PARAMETER);
  CHECK(evt_dist_create(nullptr, nullptr, nullptr, 0, &d) == EVT_E_INVALID_ARGUMENT);

  evt_dist* b = burr(1, -1);
  double out = 0;
  CHECK(evt_quantile(b, 1.5, &out) == EVT_E_DOMAIN);
  CHECK(evt_quantile(b, 0.5, &out) == EVT_OK);
  CHECK(std::string(evt_last_error()).empty());
  evt_dist_free(b);

  char* printed = nullptr;
  CHECK(evt_parse_check("u +", "u", &printed) == EVT_E_SYNTAX);
  CHECK(evt_last_error_line() == 1);
  CHECK(evt_last_error_column() == 4);
  CHECK(std::string(evt_status_name(EVT_E_SYNTAX)) != "unknown status");
  CHECK(std::string(evt_status_name(EVT_OK)) == "ok");
}

TEST_CASE("second order verification through the C interface") {
  evt_dist* d = burr(1, -1);
  const double x[] = {0.5, 2.0};
  const double u[] = {1e-2, 1e-4, 1e-6};
  evt_report* r = nullptr;
  REQUIRE(evt_verify_soc(d, x, 2, u, 3, 1e-3, &r) == EVT_OK);
  CHECK(std::string(evt_report_verdict(r)) == "Converged");
  CHECK(evt_report_u_count(r) == 3);
  CHECK(evt_report_x_count(r) == 2);
  CHECK(evt_report_ratio(r, 2, 1) == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(evt_report_target(r, 0) == doctest::Approx(1.0));
  CHECK(std::isnan(evt_report_ratio(r, 5, 0)));
  char* csv = nullptr;
  CHECK(evt_report_csv(r, &csv) == EVT_OK);
  CHECK(take(csv).rfind("u,x,ratio,target_h,abs_error\n", 0) == 0);
  evt_report_free(r);

  double rho_hat = 0;
  CHECK(evt_estimate_rho(d, nullptr, 0, &rho_hat, nullptr, nullptr, nullptr) == EVT_OK);
  CHECK(rho_hat == doctest::Approx(-1).epsilon(0.01));
  const char* cls = nullptr;
  CHECK(evt_classify_soc(d, &cls) == EVT_OK);
  CHECK(std::string(cls) == "Regular");
  evt_dist_free(d);

  evt_dist* e = nullptr;
  REQUIRE(evt_dist_create("exponential", nullptr, nullptr, 0, &e) == EVT_OK);
  REQUIRE(evt_verify_soc(e, nullptr, 0, nullptr, 0, 0, &r) == EVT_OK);
  CHECK(std::string(evt_report_verdict(r)) == "Degenerate");
  evt_report_free(r);
  double ratio = 0;
  CHECK(evt_soc_ratio(e, 1e-3, 2, &ratio) == EVT_E_DEGENERATE);
  evt_dist_free(e);
}

TEST_CASE("representations through the C interface") {
  evt_dist* d = nullptr;
  REQUIRE(evt_dist_create("logistic", nullptr, nullptr, 0, &d) == EVT_OK);
  evt_rep* rep = nullptr;
  REQUIRE(evt_rep_build(d, &rep) == EVT_OK);
  const char* regime = nullptr;
  double c = 0;
  CHECK(evt_rep_info(rep, &regime, &c, nullptr, nullptr, nullptr, nullptr) == EVT_OK);
  CHECK(std::string(regime) == "Gumbel");
  CHECK(c > 0);
  double direct = 0, rebuilt = 0;
  CHECK(evt_represented_quantile(d, 1e-4, &direct) == EVT_OK);
  CHECK(evt_rep_reconstruct(rep, 1e-4, &rebuilt) == EVT_OK);
  CHECK(rebuilt == doctest::Approx(direct).epsilon(1e-12));
  double b_an = 0, b_num = 0;
  CHECK(evt_extract_b(d, 1e-3, EVT_B_ANALYTIC, &b_an) == EVT_OK);
  CHECK(evt_extract_b(d, 1e-3, EVT_B_NUMERIC, &b_num) == EVT_OK);
  CHECK(b_an == doctest::Approx(b_num).epsilon(1e-6));
  CHECK(evt_extract_b(d, 1e-3, 7, &b_an) == EVT_E_INVALID_ARGUMENT);
  double p = 1, b = 0;
  CHECK(evt_rep_eval(rep, 1e-3, &p, &b, nullptr) == EVT_OK);
  CHECK(p == 0.0);
  CHECK(evt_rep_eval(rep, 0.0, &p, &b, nullptr) == EVT_E_DOMAIN);
  evt_rep_free(rep);
  evt_dist_free(d);
}

TEST_CASE("custom distributions from text") {
  evt_dist* d = nullptr;
  const char* text = "name = capi_pareto\nquantile = u^(-g)\ng = 0.5\ngamma = 0.5\n";
  REQUIRE(evt_dist_from_dsl(text, &d) == EVT_OK);
  double q = 0;
  CHECK(evt_quantile(d, 0.01, &q) == EVT_OK);
  CHECK(q == doctest::Approx(10.0));
  evt_dist* again = nullptr;
  CHECK(evt_dist_from_dsl(text, &again) == EVT_E_DUPLICATE_NAME);
  evt_dist_free(d);
  CHECK(evt_dist_from_dsl("name = capi_bad\nquantile = u^(-g\ng = 1\ngamma = 1\n", &again) == EVT_E_SYNTAX);
}

TEST_CASE("simulation handles are deterministic") {
  evt_dist* d = burr(1, -1);
  evt_sim* a = nullptr;
  evt_sim* b = nullptr;
  REQUIRE(evt_sim_large_quantile(d, 10000, 100, 1.0, nullptr, 0, 30, 5, &a) == EVT_OK);
  REQUIRE(evt_sim_large_quantile(d, 10000, 100, 1.0, nullptr, 0, 30, 5, &b) == EVT_OK);
  char* la = nullptr;
  char* lb = nullptr;
  CHECK(evt_sim_long_csv(a, &la) == EVT_OK);
  CHECK(evt_sim_long_csv(b, &lb) == EVT_OK);
  CHECK(take(la) == take(lb));
  CHECK(evt_sim_reps(a) == 30);
  std::vector<double> values(30);
  CHECK(evt_sim_values(a, "sup_distance", values.data(), values.size()) == 30);
  CHECK(std::is_sorted(values.begin(), values.end()));
  CHECK(evt_sim_values(a, "nosuch", values.data(), values.size()) == 0);
  double mean = 0;
  CHECK(evt_sim_stat(a, "nosuch", &mean, nullptr, nullptr) == EVT_E_INDEX);
  evt_sim_free(a);
  evt_sim_free(b);

  CHECK(evt_sim_large_quantile(d, 1000, 500, 1.0, nullptr, 0, 3, 5, &a) != EVT_OK);
  evt_dist_free(d);

  evt_dist* ref = nullptr;
  REQUIRE(evt_dist_hill_reference(1, -1, &ref) == EVT_OK);
  evt_sim* h = nullptr;
  REQUIRE(evt_sim_hill(ref, 10000, 100, "1 + 0*j", 10, 2, &h) == EVT_OK);
  double median = 0;
  CHECK(evt_sim_stat(h, "normalized", nullptr, nullptr, &median) == EVT_OK);
  CHECK(median == doctest::Approx(1.0).epsilon(0.2));
  evt_sim_free(h);
  CHECK(evt_sim_hill(ref, 10000, 100, "j +", 10, 2, &h) == EVT_E_SYNTAX);
  CHECK(evt_sim_hill(ref, 10000, 100, "u", 10, 2, &h) == EVT_E_UNKNOWN_IDENTIFIER);
  evt_dist_free(ref);

  double ks = 0;
  CHECK(evt_malmquist_ks(10000, 500, 3, &ks) == EVT_OK);
  CHECK(ks > 0);
  CHECK(std::sqrt(500.0) * ks < 1.63);
}

TEST_CASE("regularity reports") {
  evt_dist* d = burr(1, -1);
  const size_t n[] = {10000, 100000, 1000000};
  const size_t k[] = {40, 100, 251};
  evt_rc* rc = nullptr;
  REQUIRE(evt_rc_report(d, n, k, 3, &rc) == EVT_OK);
  CHECK(evt_rc_rows(rc) == 3);
  CHECK(std::string(evt_rc_soc_trend(rc)) == "decreasing");
  size_t rn = 0, rk = 0;
  double col = 0;
  CHECK(evt_rc_row(rc, 2, &rn, &rk, nullptr, &col) == EVT_OK);
  CHECK(rn == 1000000);
  CHECK(rk == 251);
  CHECK(evt_rc_row(rc, 3, &rn, &rk, nullptr, &col) == EVT_E_INVALID_ARGUMENT);
  evt_rc_free(rc);
  evt_dist_free(d);
}

TEST_CASE("atomic file output") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "evt_capi_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string path = (dir / "out.csv").string();
  CHECK(evt_write_file(path.c_str(), "a,b\n1,2\n") == EVT_OK);
  std::ifstream in(path);
  std::string content((std::istreambuf_iterator<char>(in)), {});
  CHECK(content == "a,b\n1,2\n");
  const std::string missing = (dir / "nope" / "out.csv").string();
  CHECK(evt_write_file(missing.c_str(), "x") == EVT_E_IO);
  CHECK(std::distance(fs::directory_iterator(dir), fs::directory_iterator()) == 1);
  fs::remove_all(dir);
}

TEST_CASE("catalog tables") {
  char* csv = nullptr;
  CHECK(evt_catalog_csv(&csv) == EVT_OK);
  CHECK(take(csv).find("LogExponential") != std::string::npos);
  const double u[] = {1e-3};
  const double x[] = {2.0};
  CHECK(evt_table_csv(u, 1, x, 1, &csv) == EVT_OK);
  CHECK(take(csv).rfind("family,gamma,rho,u,x,s,S,b,h\n", 0) == 0);
  double d = 0;
  CHECK(evt_d_gamma(0.0, std::exp(1.0), &d) == EVT_OK);
  CHECK(d == doctest::Approx(-1.0));
  CHECK(evt_d_gamma(1.0, -1.0, &d) == EVT_E_DOMAIN);
}
