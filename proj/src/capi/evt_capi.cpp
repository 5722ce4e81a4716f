#include "evt/evt.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "evt/catalog.hpp"
#include "evt/csv.hpp"
#include "evt/distdsl.hpp"
#include "evt/montecarlo.hpp"
#include "evt/representation.hpp"
#include "evt/soc.hpp"

struct evt_dist {
  evt::Distribution dist;
};
struct evt_report {
  evt::ConvergenceReport report;
};
struct evt_rep {
  evt::RepTriple rep;
};
struct evt_rc {
  evt::mc::RcReport report;
};
struct evt_sim {
  evt::mc::SimRun run;
};

namespace {

thread_local std::string g_error;
thread_local int g_line = 0;
thread_local int g_column = 0;

evt_status from_code(evt::ErrorCode code) {
  using evt::ErrorCode;
  switch (code) {
    case ErrorCode::Domain: return EVT_E_DOMAIN;
    case ErrorCode::UnsupportedParameter: return EVT_E_UNSUPPORTED_PARAMETER;
    case ErrorCode::AbsentProfile: return EVT_E_ABSENT_PROFILE;
    case ErrorCode::Degenerate: return EVT_E_DEGENERATE;
    case ErrorCode::Differentiation: return EVT_E_DIFFERENTIATION;
    case ErrorCode::Quadrature: return EVT_E_QUADRATURE;
    case ErrorCode::InsufficientPoints: return EVT_E_INSUFFICIENT_POINTS;
    case ErrorCode::SignChange: return EVT_E_SIGN_CHANGE;
    case ErrorCode::Index: return EVT_E_INDEX;
    case ErrorCode::Unsupported: return EVT_E_UNSUPPORTED;
    case ErrorCode::Syntax: return EVT_E_SYNTAX;
    case ErrorCode::UnknownIdentifier: return EVT_E_UNKNOWN_IDENTIFIER;
    case ErrorCode::UnboundParameter: return EVT_E_UNBOUND_PARAMETER;
    case ErrorCode::DomainViolation: return EVT_E_DOMAIN_VIOLATION;
    case ErrorCode::DuplicateName: return EVT_E_DUPLICATE_NAME;
    case ErrorCode::NonMonotone: return EVT_E_NON_MONOTONE;
    case ErrorCode::Config: return EVT_E_CONFIG;
    case ErrorCode::Io: return EVT_E_IO;
  }
  return EVT_E_INTERNAL;
}

template <class F>
evt_status guarded(F&& body) {
  g_error.clear();
  g_line = g_column = 0;
  try {
    body();
    return EVT_OK;
  } catch (const evt::Error& e) {
    g_error = e.what();
    if (e.has_position()) {
      g_line = e.line();
      g_column = e.column();
    }
    return from_code(e.code());
  } catch (const std::bad_alloc&) {
    g_error = "out of memory";
  } catch (const std::exception& e) {
    g_error = e.what();
  } catch (...) {
    g_error = "unknown failure";
  }
  return EVT_E_INTERNAL;
}

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

evt_status invalid(const char* what) {
  g_error = what;
  g_line = g_column = 0;
  return EVT_E_INVALID_ARGUMENT;
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::vector<double> grid(const double* v, std::size_t n) {
  return n ? std::vector<double>(v, v + n) : std::vector<double>{};
}

std::size_t label_index(const evt::mc::SimSummary& s, const char* label) {
  for (std::size_t i = 0; i < s.labels().size(); ++i) {
    if (s.labels()[i] == label) return i;
  }
  evt::fail(evt::ErrorCode::Index, std::string("no statistic named ") + label);
}

}  // namespace

#define EVT_CHECK(cond)                       \
  do {                                        \
    if (!(cond)) return invalid(#cond " failed"); \
  } while (0)

extern "C" {

const char* evt_last_error(void) { return g_error.c_str(); }
int evt_last_error_line(void) { return g_line; }
int evt_last_error_column(void) { return g_column; }

const char* evt_status_name(evt_status status) {
  switch (status) {
    case EVT_OK: return "ok";
    case EVT_E_INVALID_ARGUMENT: return "invalid argument";
    case EVT_E_INTERNAL: return "internal error";
    default: break;
  }
  const int idx = static_cast<int>(status) - 1;
  if (idx >= 0 && idx <= static_cast<int>(evt::ErrorCode::Io)) {
    return evt::to_string(static_cast<evt::ErrorCode>(idx));
  }
  return "unknown status";
}

const char* evt_version(void) { return "1.0.0"; }

void evt_string_free(char* s) { std::free(s); }

evt_status evt_write_file(const char* path, const char* content) {
  EVT_CHECK(path && content);
  return guarded([&] { evt::csv::write_atomic(path, content); });
}

evt_status evt_dist_create(const char* family, const char* const* names, const double* values,
                           size_t count, evt_dist** out) {
  EVT_CHECK(family && out);
  EVT_CHECK(count == 0 || (names && values));
  return guarded([&] {
    const auto fam = evt::family_from_string(family);
    if (!fam || *fam == evt::Family::Custom) {
      evt::fail(evt::ErrorCode::UnsupportedParameter,
                std::string("unknown family '") + family + "'");
    }
    evt::ParamList params;
    for (size_t i = 0; i < count; ++i) {
      require(names[i] != nullptr, "parameter name is null");
      params.emplace_back(names[i], values[i]);
    }
    *out = new evt_dist{evt::Distribution::from_params(*fam, params)};
  });
}

evt_status evt_dist_from_dsl(const char* text, evt_dist** out) {
  EVT_CHECK(text && out);
  return guarded([&] {
    const auto file = evt::dsl::parse_dsl_file(text);
    *out = new evt_dist{evt::dsl::load_custom(file, evt::dsl::global_registry())};
  });
}

evt_status evt_dist_hill_reference(double gamma, double rho, evt_dist** out) {
  EVT_CHECK(out);
  return guarded([&] { *out = new evt_dist{evt::mc::hill_reference_distribution(gamma, rho)}; });
}

evt_status evt_dist_log_view(const evt_dist* dist, evt_dist** out) {
  EVT_CHECK(dist && out);
  return guarded([&] { *out = new evt_dist{dist->dist.log_view()}; });
}

void evt_dist_free(evt_dist* dist) { delete dist; }

evt_status evt_dist_id(const evt_dist* dist, char** out) {
  EVT_CHECK(dist && out);
  return guarded([&] { *out = dup(dist->dist.id()); });
}

evt_status evt_dist_tail(const evt_dist* dist, double* gamma, double* rho, int* has_endpoint,
                         double* endpoint) {
  EVT_CHECK(dist);
  const auto& t = dist->dist.tail();
  if (gamma) *gamma = t.gamma;
  if (rho) *rho = t.rho;
  if (has_endpoint) *has_endpoint = t.endpoint.has_value();
  if (endpoint) *endpoint = t.endpoint.value_or(evt::kNaN);
  return EVT_OK;
}

evt_status evt_dist_default_params(const char* family, char** out) {
  EVT_CHECK(family && out);
  return guarded([&] {
    const auto fam = evt::family_from_string(family);
    if (!fam) evt::fail(evt::ErrorCode::UnsupportedParameter, "unknown family");
    std::string s;
    for (const auto& [k, v] : evt::describe(*fam).default_params) {
      if (!s.empty()) s += ';';
      s += k + "=" + evt::csv::format(v);
    }
    *out = dup(s);
  });
}

evt_status evt_quantile(const evt_dist* dist, double u, double* out) {
  EVT_CHECK(dist && out);
  return guarded([&] { *out = dist->dist.quantile(u); });
}

evt_status evt_d_gamma(double gamma, double x, double* out) {
  EVT_CHECK(out);
  return guarded([&] { *out = evt::d_gamma(gamma, x); });
}

evt_status evt_h_star(double gamma, double rho, double x, double* out) {
  EVT_CHECK(out);
  return guarded([&] { *out = evt::h_star(gamma, rho, x); });
}

evt_status evt_aux_eval(const evt_dist* dist, double u, double x, double* s, double* S, double* h,
                        int* orientation, int* degenerate) {
  EVT_CHECK(dist);
  return guarded([&] {
    const auto aux = evt::aux_profile(dist->dist);
    if (s) *s = aux.s_fn(u);
    if (S) *S = aux.degenerate ? evt::kNaN : aux.S_fn(u);
    if (h) *h = aux.degenerate ? evt::kNaN : aux.h_fn(x);
    if (orientation) *orientation = aux.orientation;
    if (degenerate) *degenerate = aux.degenerate;
  });
}

evt_status evt_catalog_csv(char** out) {
  EVT_CHECK(out);
  return guarded([&] { *out = dup(evt::catalog_csv()); });
}

evt_status evt_defaults_csv(char** out) {
  EVT_CHECK(out);
  return guarded([&] { *out = dup(evt::defaults_csv()); });
}

evt_status evt_table_csv(const double* u, size_t nu, const double* x, size_t nx, char** out) {
  EVT_CHECK(out && (nu == 0 || u) && (nx == 0 || x));
  return guarded([&] {
    auto us = nu ? grid(u, nu) : std::vector<double>{1e-2, 1e-4, 1e-6};
    auto xs = nx ? grid(x, nx) : evt::default_x_grid();
    *out = dup(evt::function_table_csv(us, xs));
  });
}

evt_status evt_first_order_ratio(const evt_dist* dist, double u, double x, double* out) {
  EVT_CHECK(dist && out);
  return guarded([&] { *out = evt::first_order_ratio(dist->dist, u, x); });
}

evt_status evt_soc_remainder(const evt_dist* dist, double u, double x, double* out) {
  EVT_CHECK(dist && out);
  return guarded([&] { *out = evt::soc_remainder(dist->dist, u, x); });
}

evt_status evt_soc_ratio(const evt_dist* dist, double u, double x, double* out) {
  EVT_CHECK(dist && out);
  return guarded([&] { *out = evt::soc_ratio(dist->dist, u, x); });
}

evt_status evt_verify_soc(const evt_dist* dist, const double* x, size_t nx, const double* u,
                          size_t nu, double tol, evt_report** out) {
  EVT_CHECK(dist && out && (nx == 0 || x) && (nu == 0 || u));
  return guarded([&] {
    const auto d = evt::soc_defaults(dist->dist);
    auto xs = nx ? grid(x, nx) : d.x_grid;
    auto us = nu ? grid(u, nu) : evt::default_u_grid(dist->dist);
    *out = new evt_report{evt::verify_soc(dist->dist, xs, us, tol > 0 ? tol : d.tol)};
  });
}

void evt_report_free(evt_report* report) { delete report; }

const char* evt_report_verdict(const evt_report* r) {
  return r ? evt::to_string(r->report.verdict) : "";
}
size_t evt_report_u_count(const evt_report* r) { return r ? r->report.u_grid.size() : 0; }
size_t evt_report_x_count(const evt_report* r) { return r ? r->report.x_grid.size() : 0; }
double evt_report_u(const evt_report* r, size_t i) {
  return r && i < r->report.u_grid.size() ? r->report.u_grid[i] : evt::kNaN;
}
double evt_report_x(const evt_report* r, size_t j) {
  return r && j < r->report.x_grid.size() ? r->report.x_grid[j] : evt::kNaN;
}
double evt_report_ratio(const evt_report* r, size_t i, size_t j) {
  return r && i < r->report.u_grid.size() && j < r->report.x_grid.size() ? r->report.ratios[i][j]
                                                                         : evt::kNaN;
}
double evt_report_target(const evt_report* r, size_t j) {
  return r && j < r->report.target.size() ? r->report.target[j] : evt::kNaN;
}
double evt_report_max_error(const evt_report* r, size_t i) {
  return r && i < r->report.max_error_per_u.size() ? r->report.max_error_per_u[i] : evt::kNaN;
}
double evt_report_max_abs_remainder(const evt_report* r) {
  return r ? r->report.max_abs_remainder : evt::kNaN;
}
double evt_report_tol(const evt_report* r) { return r ? r->report.tol : evt::kNaN; }

evt_status evt_report_csv(const evt_report* report, char** out) {
  EVT_CHECK(report && out);
  return guarded([&] { *out = dup(evt::report_csv(report->report)); });
}

evt_status evt_estimate_rho(const evt_dist* dist, const double* u, size_t nu, double* rho_hat,
                            double* slope, double* intercept, double* r_squared) {
  EVT_CHECK(dist && (nu == 0 || u));
  return guarded([&] {
    const auto fit =
        evt::estimate_rho(dist->dist, nu ? grid(u, nu) : evt::default_rho_grid());
    if (rho_hat) *rho_hat = fit.rho_hat;
    if (slope) *slope = fit.slope;
    if (intercept) *intercept = fit.intercept;
    if (r_squared) *r_squared = fit.r_squared;
  });
}

evt_status evt_classify_soc(const evt_dist* dist, const char** out) {
  EVT_CHECK(dist && out);
  return guarded([&] { *out = evt::to_string(evt::classify_soc(dist->dist)); });
}

evt_status evt_extract_b(const evt_dist* dist, double u, int method, double* out) {
  EVT_CHECK(dist && out && method >= EVT_B_AUTO && method <= EVT_B_NUMERIC);
  return guarded([&] {
    *out = evt::extract_b(dist->dist, u, static_cast<evt::BMethod>(method));
  });
}

evt_status evt_rep_build(const evt_dist* dist, evt_rep** out) {
  EVT_CHECK(dist && out);
  return guarded([&] { *out = new evt_rep{evt::build_representation(dist->dist)}; });
}

void evt_rep_free(evt_rep* rep) { delete rep; }

evt_status evt_rep_info(const evt_rep* rep, const char** regime, double* c, double* d,
                        double* gamma, int* has_endpoint, double* endpoint) {
  EVT_CHECK(rep);
  const auto& r = rep->rep;
  if (regime) *regime = evt::to_string(r.regime);
  if (c) *c = r.c;
  if (d) *d = r.d;
  if (gamma) *gamma = r.gamma;
  if (has_endpoint) *has_endpoint = r.endpoint.has_value();
  if (endpoint) *endpoint = r.endpoint.value_or(evt::kNaN);
  return EVT_OK;
}

evt_status evt_rep_eval(const evt_rep* rep, double u, double* p, double* b, double* s) {
  EVT_CHECK(rep);
  return guarded([&] {
    if (!(u > 0 && u < 1)) evt::fail(evt::ErrorCode::Domain, "u must lie in (0, 1)");
    if (p) *p = rep->rep.p_fn(u);
    if (b) *b = rep->rep.b_fn(u);
    if (s) *s = rep->rep.s_fn ? rep->rep.s_fn(u) : evt::kNaN;
  });
}

evt_status evt_rep_reconstruct(const evt_rep* rep, double u, double* out) {
  EVT_CHECK(rep && out);
  return guarded([&] { *out = evt::reconstruct_quantile(rep->rep, u); });
}

evt_status evt_represented_quantile(const evt_dist* dist, double u, double* out) {
  EVT_CHECK(dist && out);
  return guarded([&] { *out = evt::represented_quantile(dist->dist, u); });
}

evt_status evt_residuals(const evt_dist* dist, double u, double x, double* p_term, double* b_term,
                         double* pb_term) {
  EVT_CHECK(dist);
  return guarded([&] {
    const auto r = evt::residuals(dist->dist, u, x);
    if (p_term) *p_term = r.p_term;
    if (b_term) *b_term = r.b_term;
    if (pb_term) *pb_term = r.pb_term;
  });
}

evt_status evt_rep_first_order_error(const evt_dist* dist, const evt_rep* rep, double u, double x,
                                     double* out) {
  EVT_CHECK(dist && rep && out);
  return guarded(
      [&] { *out = evt::representation_first_order_error(dist->dist, rep->rep, u, x); });
}

evt_status evt_rep_roundtrip_csv(const evt_dist* dist, const double* u, size_t nu, char** out) {
  EVT_CHECK(dist && out && (nu == 0 || u));
  return guarded([&] {
    auto us = nu ? grid(u, nu) : std::vector<double>{1e-2, 1e-4, 1e-6};
    *out = dup(evt::rep_roundtrip_csv(dist->dist, us));
  });
}

evt_status evt_rc_report(const evt_dist* dist, const size_t* n, const size_t* k, size_t rows,
                         evt_rc** out) {
  EVT_CHECK(dist && out && rows > 0 && n && k);
  return guarded([&] {
    std::vector<std::pair<std::size_t, std::size_t>> schedule;
    for (size_t i = 0; i < rows; ++i) schedule.emplace_back(n[i], k[i]);
    *out = new evt_rc{evt::mc::rc_report(dist->dist, schedule)};
  });
}

void evt_rc_free(evt_rc* rc) { delete rc; }
const char* evt_rc_rep_trend(const evt_rc* rc) {
  return rc ? evt::mc::to_string(rc->report.rep_trend) : "";
}
const char* evt_rc_soc_trend(const evt_rc* rc) {
  return rc ? evt::mc::to_string(rc->report.soc_trend) : "";
}
size_t evt_rc_rows(const evt_rc* rc) { return rc ? rc->report.rows.size() : 0; }

evt_status evt_rc_row(const evt_rc* rc, size_t i, size_t* n, size_t* k, double* rep_column,
                      double* soc_column) {
  EVT_CHECK(rc && i < rc->report.rows.size());
  const auto& r = rc->report.rows[i];
  if (n) *n = r.n;
  if (k) *k = r.k;
  if (rep_column) *rep_column = r.rep_column;
  if (soc_column) *soc_column = r.soc_column;
  return EVT_OK;
}

evt_status evt_rc_csv(const evt_rc* rc, char** out) {
  EVT_CHECK(rc && out);
  return guarded([&] { *out = dup(evt::mc::rc_csv(rc->report)); });
}

evt_status evt_sim_large_quantile(const evt_dist* dist, size_t n, size_t k, double alpha,
                                  const double* s, size_t ns, size_t reps, uint64_t seed,
                                  evt_sim** out) {
  EVT_CHECK(dist && out && (ns == 0 || s));
  return guarded([&] {
    evt::mc::LargeQuantileSpec spec;
    spec.n = n;
    spec.k = k;
    spec.alpha = alpha;
    if (ns) spec.s_grid = grid(s, ns);
    *out = new evt_sim{evt::mc::replicate_large_quantile(dist->dist, spec, reps, seed)};
  });
}

evt_status evt_sim_hill(const evt_dist* dist, size_t n, size_t k, const char* f, size_t reps,
                        uint64_t seed, evt_sim** out) {
  EVT_CHECK(dist && out);
  return guarded([&] {
    evt::mc::HillSpec spec;
    spec.n = n;
    spec.k = k;
    if (f) {
      evt::dsl::ParseOptions opts;
      opts.variable = "j";
      opts.parameters.emplace();
      auto expr = evt::dsl::parse(f, opts);
      spec.f = [expr](double j) { return evt::dsl::eval(expr, j); };
    }
    *out = new evt_sim{evt::mc::replicate_hill(dist->dist, spec, reps, seed)};
  });
}

void evt_sim_free(evt_sim* sim) { delete sim; }
size_t evt_sim_reps(const evt_sim* sim) { return sim ? sim->run.summary.reps() : 0; }

evt_status evt_sim_stat(const evt_sim* sim, const char* label, double* mean, double* variance,
                        double* median) {
  EVT_CHECK(sim && label);
  return guarded([&] {
    const auto& s = sim->run.summary;
    const std::size_t i = label_index(s, label);
    if (mean) *mean = s.mean(i);
    if (variance) *variance = s.variance(i);
    if (median) *median = s.quantile(i, 0.5);
  });
}

size_t evt_sim_values(const evt_sim* sim, const char* label, double* out, size_t cap) {
  if (!sim || !label) return 0;
  const auto& s = sim->run.summary;
  for (std::size_t i = 0; i < s.labels().size(); ++i) {
    if (s.labels()[i] != label) continue;
    const auto& v = s.sorted(i);
    const size_t m = std::min(cap, v.size());
    if (out) std::copy(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(m), out);
    return out ? m : v.size();
  }
  return 0;
}

evt_status evt_sim_long_csv(const evt_sim* sim, char** out) {
  EVT_CHECK(sim && out);
  return guarded([&] { *out = dup(sim->run.long_csv); });
}

evt_status evt_sim_summary_csv(const evt_sim* sim, char** out) {
  EVT_CHECK(sim && out);
  return guarded([&] { *out = dup(evt::mc::summary_csv(sim->run.summary)); });
}

evt_status evt_malmquist_ks(size_t n, size_t k, uint64_t seed, double* distance) {
  EVT_CHECK(distance);
  return guarded([&] {
    const auto sample = evt::mc::uniform_order_statistics(n, seed);
    auto e = evt::mc::malmquist_exponentials(sample, k);
    for (double& v : e) v = -std::expm1(-v);
    *distance = evt::mc::ks_statistic(std::move(e), [](double t) { return t; });
  });
}

evt_status evt_parse_check(const char* text, const char* variable, char** printed) {
  EVT_CHECK(text && printed);
  return guarded([&] {
    evt::dsl::ParseOptions opts;
    if (variable) opts.variable = variable;
    *printed = dup(evt::dsl::print(evt::dsl::parse(text, opts)));
  });
}

}  // extern "C"
