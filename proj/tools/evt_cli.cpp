#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "evt/evt.h"

namespace {

enum Exit { kOk = 0, kVerdict = 1, kUsage = 2, kNumeric = 3 };

struct ApiFailure {
  evt_status status;
  std::string message;
};

bool is_usage_status(evt_status s) {
  switch (s) {
    case EVT_E_UNSUPPORTED_PARAMETER:
    case EVT_E_ABSENT_PROFILE:
    case EVT_E_SYNTAX:
    case EVT_E_UNKNOWN_IDENTIFIER:
    case EVT_E_UNBOUND_PARAMETER:
    case EVT_E_DUPLICATE_NAME:
    case EVT_E_NON_MONOTONE:
    case EVT_E_CONFIG:
    case EVT_E_IO:
    case EVT_E_INVALID_ARGUMENT:
      return true;
    default:
      return false;
  }
}

std::string last_error_text() {
  std::string msg = evt_last_error();
  if (evt_last_error_line() > 0) {
    msg = "line " + std::to_string(evt_last_error_line()) + ", column " +
          std::to_string(evt_last_error_column()) + ": " + msg;
  }
  return msg;
}

void check(evt_status s) {
  if (s != EVT_OK) throw ApiFailure{s, last_error_text()};
}

struct DistDeleter {
  void operator()(evt_dist* d) const { evt_dist_free(d); }
};
struct ReportDeleter {
  void operator()(evt_report* r) const { evt_report_free(r); }
};
struct RepDeleter {
  void operator()(evt_rep* r) const { evt_rep_free(r); }
};
struct RcDeleter {
  void operator()(evt_rc* r) const { evt_rc_free(r); }
};
struct SimDeleter {
  void operator()(evt_sim* s) const { evt_sim_free(s); }
};
using Dist = std::unique_ptr<evt_dist, DistDeleter>;
using Report = std::unique_ptr<evt_report, ReportDeleter>;
using Rep = std::unique_ptr<evt_rep, RepDeleter>;
using Rc = std::unique_ptr<evt_rc, RcDeleter>;
using Sim = std::unique_ptr<evt_sim, SimDeleter>;

struct CString {
  char* p = nullptr;
  ~CString() { evt_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

void write_output(const std::string& path, const std::string& content) {
  check(evt_write_file(path.c_str(), content.c_str()));
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Raw flag values of one subcommand; typed access validates and collects errors.
class Flags {
 public:
  explicit Flags(CLI::App* app) : app_(app) {}

  void add(const std::string& name, const std::string& help) {
    opts_[name] = app_->add_option("--" + name, raw_[name], help);
  }

  void add_switch(const std::string& name, const std::string& help) {
    opts_[name] = app_->add_flag("--" + name, raw_[name], help);
  }

  bool given(const std::string& name) const {
    return raw_.count(name) && (opts_.at(name)->count() > 0 || from_config_.count(name));
  }

  bool accepts(const std::string& name) const { return opts_.count(name) > 0; }

  void load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
      errors.push_back("cannot read config file '" + path + "'");
      return;
    }
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      line = trim(line.substr(0, line.find('#')));
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) {
        errors.push_back(path + ":" + std::to_string(lineno) + ": expected key=value");
        continue;
      }
      std::string key = trim(line.substr(0, eq));
      if (key.rfind("--", 0) == 0) key = key.substr(2);
      if (!accepts(key) || key == "config") {
        errors.push_back(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
        continue;
      }
      if (opts_.at(key)->count() == 0) {
        raw_[key] = trim(line.substr(eq + 1));
        from_config_.insert(key);
      }
    }
  }

  std::optional<double> real(const std::string& name) {
    if (!given(name)) return std::nullopt;
    const std::string& s = raw_[name];
    double v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
      errors.push_back("--" + name + ": '" + s + "' is not a finite number");
      return std::nullopt;
    }
    return v;
  }

  std::optional<std::size_t> count(const std::string& name) {
    auto v = real(name);
    if (!v) return std::nullopt;
    if (*v < 1 || *v != std::floor(*v) || *v > 1e15) {
      errors.push_back("--" + name + ": expected a positive integer");
      return std::nullopt;
    }
    return static_cast<std::size_t>(*v);
  }

  std::optional<std::uint64_t> seed(const std::string& name) {
    if (!given(name)) return std::nullopt;
    const std::string& s = raw_[name];
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      errors.push_back("--" + name + ": expected an unsigned 64-bit integer");
      return std::nullopt;
    }
    return v;
  }

  std::vector<double> grid(const std::string& name, double lo, double hi, bool open_hi,
                           bool decreasing = false) {
    std::vector<double> out;
    if (!given(name)) return out;
    std::stringstream ss(raw_[name]);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      double v = 0;
      auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
      const bool in_range = v > lo && (open_hi ? v < hi : v <= hi);
      if (ec != std::errc() || ptr != item.data() + item.size() || !in_range) {
        errors.push_back("--" + name + ": invalid entry '" + item + "'");
        return {};
      }
      out.push_back(v);
    }
    if (out.empty()) errors.push_back("--" + name + ": empty list");
    if (decreasing && std::adjacent_find(out.begin(), out.end(), std::less_equal<>()) != out.end()) {
      errors.push_back("--" + name + ": values must be strictly decreasing");
      return {};
    }
    return out;
  }

  std::string text(const std::string& name, const std::string& fallback = "") {
    return given(name) ? raw_[name] : fallback;
  }

  std::vector<std::string> errors;

 private:
  CLI::App* app_;
  std::map<std::string, std::string> raw_;
  std::map<std::string, CLI::Option*> opts_;
  std::set<std::string> from_config_;
};

const char* const kParamFlags[] = {"gamma", "rho", "a", "b", "c"};

void add_dist_flags(Flags& f) {
  f.add("family", "catalog family (burr, reversedburr, singhmaddala, logsinghmaddala, "
                  "exponential, logexponential, normal, lognormal, logistic)");
  f.add("gamma", "family parameter gamma");
  f.add("rho", "family parameter rho");
  f.add("a", "family parameter a");
  f.add("b", "family parameter b");
  f.add("c", "family parameter c");
  f.add("dsl-file", "custom distribution file (key=value lines: name, quantile, s, S, h, "
                    "orientation, gamma, rho, endpoint, parameters)");
}

void add_common(Flags& f) {
  f.add("out", "output CSV path, '-' for standard output (default '-')");
  f.add("config", "key=value file supplying flag values; explicit flags override it");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ApiFailure{EVT_E_IO, "cannot read '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Builds the distribution selected by the flags; failures become config errors.
Dist select_distribution(Flags& f, bool required) {
  try {
    evt_dist* raw = nullptr;
    if (f.given("dsl-file")) {
      if (f.given("family")) {
        f.errors.push_back("--family and --dsl-file are mutually exclusive");
        return nullptr;
      }
      std::string text = read_file(f.text("dsl-file"));
      for (const char* p : kParamFlags) {
        if (auto v = f.real(p)) {
          std::ostringstream line;
          line.precision(17);
          line << '\n' << p << " = " << *v;
          text += line.str();
        }
      }
      check(evt_dist_from_dsl(text.c_str(), &raw));
      return Dist(raw);
    }
    if (!f.given("family")) {
      if (required) f.errors.push_back("one of --family or --dsl-file is required");
      return nullptr;
    }
    std::vector<const char*> names;
    std::vector<double> values;
    for (const char* p : kParamFlags) {
      if (auto v = f.real(p)) {
        names.push_back(p);
        values.push_back(*v);
      }
    }
    const std::string family = f.text("family");
    check(evt_dist_create(family.c_str(), names.data(), values.data(), names.size(), &raw));
    return Dist(raw);
  } catch (const ApiFailure& e) {
    if (!is_usage_status(e.status)) throw;
    f.errors.push_back(e.message);
    return nullptr;
  }
}

std::string dist_id(const evt_dist* d) {
  CString s;
  check(evt_dist_id(d, &s.p));
  return s.str();
}

int report_config_errors(const Flags& f, const std::string& command) {
  if (f.errors.empty()) return kOk;
  std::cerr << "evt " << command << ": invalid configuration\n";
  for (const auto& e : f.errors) std::cerr << "  " << e << "\n";
  return kUsage;
}

struct Command {
  CLI::App* app;
  std::unique_ptr<Flags> flags;
  std::function<int(Flags&)> run;
};

int run_catalog(Flags& f) {
  const bool defaults = f.given("defaults") && f.text("defaults") != "false" &&
                        f.text("defaults") != "0";
  const std::string out = f.text("out", "-");
  if (int rc = report_config_errors(f, "catalog")) return rc;
  CString csv;
  check(defaults ? evt_defaults_csv(&csv.p) : evt_catalog_csv(&csv.p));
  write_output(out, csv.str());
  return kOk;
}

int run_table(Flags& f) {
  const auto u = f.grid("u-grid", 0, 1, true);
  const auto x = f.grid("x-grid", 0, INFINITY, true);
  const std::string out = f.text("out", "-");
  if (int rc = report_config_errors(f, "table")) return rc;
  CString csv;
  check(evt_table_csv(u.data(), u.size(), x.data(), x.size(), &csv.p));
  write_output(out, csv.str());
  return kOk;
}

int run_verify_soc(Flags& f) {
  const auto u = f.grid("u-grid", 0, 1, true, true);
  const auto x = f.grid("x-grid", 0, INFINITY, true);
  const auto tol = f.real("tol");
  if (tol && !(*tol > 0)) f.errors.push_back("--tol must be positive");
  const std::string out = f.text("out", "-");
  Dist dist = select_distribution(f, true);
  if (int rc = report_config_errors(f, "verify-soc")) return rc;

  evt_report* raw = nullptr;
  check(evt_verify_soc(dist.get(), x.data(), x.size(), u.data(), u.size(), tol.value_or(0), &raw));
  Report report(raw);
  CString csv;
  check(evt_report_csv(report.get(), &csv.p));
  write_output(out, csv.str());

  const std::string verdict = evt_report_verdict(report.get());
  const std::size_t nu = evt_report_u_count(report.get());
  std::cerr << "distribution: " << dist_id(dist.get()) << "\n";
  if (verdict != "Degenerate" && nu > 0) {
    std::cerr << "max |ratio - h| at u=" << evt_report_u(report.get(), nu - 1) << ": "
              << evt_report_max_error(report.get(), nu - 1)
              << " (tol " << evt_report_tol(report.get()) << ")\n";
  } else {
    std::cerr << "max |remainder|: " << evt_report_max_abs_remainder(report.get()) << "\n";
  }
  std::cout.flush();
  std::cerr << "verdict: " << verdict << "\n";
  if (out != "-") std::cout << "verdict: " << verdict << "\n";
  return verdict == "NotConverged" ? kVerdict : kOk;
}

int run_rho_fit(Flags& f) {
  const auto u = f.grid("u-grid", 0, 1, true);
  const std::string out = f.text("out", "-");
  Dist dist = select_distribution(f, true);
  if (int rc = report_config_errors(f, "rho-fit")) return rc;

  double rho_hat = 0, slope = 0, intercept = 0, r2 = 0;
  check(evt_estimate_rho(dist.get(), u.data(), u.size(), &rho_hat, &slope, &intercept, &r2));
  double rho_true = NAN;
  check(evt_dist_tail(dist.get(), nullptr, &rho_true, nullptr, nullptr));
  std::ostringstream csv;
  csv.precision(17);
  csv << "distribution,rho_hat,rho_true,slope,intercept,r_squared\n"
      << dist_id(dist.get()) << ',' << rho_hat << ',' << rho_true << ',' << slope << ','
      << intercept << ',' << r2 << "\n";
  write_output(out, csv.str());
  return kOk;
}

int run_rep_roundtrip(Flags& f) {
  const auto u_given = f.grid("u-grid", 0, 1, true);
  const auto tol = f.real("tol");
  if (tol && !(*tol > 0)) f.errors.push_back("--tol must be positive");
  const std::string out = f.text("out", "-");
  Dist dist = select_distribution(f, true);
  if (int rc = report_config_errors(f, "rep-roundtrip")) return rc;

  const std::vector<double> u = u_given.empty() ? std::vector<double>{1e-2, 1e-4, 1e-6} : u_given;
  CString csv;
  check(evt_rep_roundtrip_csv(dist.get(), u.data(), u.size(), &csv.p));
  write_output(out, csv.str());

  evt_rep* raw = nullptr;
  check(evt_rep_build(dist.get(), &raw));
  Rep rep(raw);
  double worst = 0;
  for (double ui : u) {
    double direct = 0, rebuilt = 0;
    check(evt_represented_quantile(dist.get(), ui, &direct));
    check(evt_rep_reconstruct(rep.get(), ui, &rebuilt));
    worst = std::max(worst, std::abs(rebuilt - direct) / std::max(std::abs(direct), 1e-300));
  }
  const double limit = tol.value_or(1e-8);
  std::cerr << "max relative error: " << worst << " (tol " << limit << ")\n";
  return worst <= limit ? kOk : kVerdict;
}

int run_rc_check(Flags& f) {
  std::vector<double> ns = f.grid("n", 1, 1e15, false);
  for (double n : ns) {
    if (n != std::floor(n)) f.errors.push_back("--n: entries must be integers");
  }
  if (ns.empty() && !f.given("n")) ns = {1e4, 1e5, 1e6};
  std::vector<double> ks = f.grid("k", 0, 1e15, false);
  const auto power = f.real("k-exp");
  if (f.given("k") && f.given("k-exp")) f.errors.push_back("--k and --k-exp are mutually exclusive");
  if (power && !(*power > 0 && *power < 1)) f.errors.push_back("--k-exp must lie in (0, 1)");
  if (!ks.empty() && ks.size() != ns.size()) {
    f.errors.push_back("--k must list one value per entry of --n");
  }
  const std::string out = f.text("out", "-");
  Dist dist = select_distribution(f, true);
  if (int rc = report_config_errors(f, "rc-check")) return rc;

  std::vector<std::size_t> n_col, k_col;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    n_col.push_back(static_cast<std::size_t>(ns[i]));
    k_col.push_back(ks.empty() ? static_cast<std::size_t>(std::llround(
                                     std::pow(ns[i], power.value_or(0.4))))
                               : static_cast<std::size_t>(ks[i]));
  }
  evt_rc* raw = nullptr;
  check(evt_rc_report(dist.get(), n_col.data(), k_col.data(), n_col.size(), &raw));
  Rc rc(raw);
  CString csv;
  check(evt_rc_csv(rc.get(), &csv.p));
  write_output(out, csv.str());
  const std::string rep_trend = evt_rc_rep_trend(rc.get());
  const std::string soc_trend = evt_rc_soc_trend(rc.get());
  std::cerr << "sqrt(k) sup|p|+|b| trend: " << rep_trend << "\n"
            << "sqrt(k) |S(k/n)| trend: " << soc_trend << "\n";
  const bool ok = soc_trend == "decreasing" || soc_trend == "not applicable";
  return ok ? kOk : kVerdict;
}

struct SimOutputs {
  std::string out;
  std::string summary_out;
};

int finish_sim(const evt_sim* sim, const SimOutputs& o) {
  CString long_csv, summary;
  check(evt_sim_long_csv(sim, &long_csv.p));
  check(evt_sim_summary_csv(sim, &summary.p));
  write_output(o.out, long_csv.str());
  if (!o.summary_out.empty()) write_output(o.summary_out, summary.str());
  return kOk;
}

int run_sim_quantile(Flags& f) {
  const auto n = f.count("n");
  const auto k = f.count("k");
  const auto alpha = f.real("alpha");
  const auto s = f.grid("s-grid", 0, 1, false);
  const auto reps = f.count("reps");
  const auto seed = f.seed("seed");
  if (alpha && !(*alpha > 0)) f.errors.push_back("--alpha must be positive");
  const SimOutputs o{f.text("out", "-"), f.text("summary-out")};
  Dist dist = select_distribution(f, true);
  if (int rc = report_config_errors(f, "sim-quantile")) return rc;

  evt_sim* raw = nullptr;
  check(evt_sim_large_quantile(dist.get(), n.value_or(100000), k.value_or(1000),
                               alpha.value_or(1.0), s.data(), s.size(), reps.value_or(200),
                               seed.value_or(1), &raw));
  Sim sim(raw);
  double sup_median = 0;
  check(evt_sim_stat(sim.get(), "sup_distance", nullptr, nullptr, &sup_median));
  std::cerr << "replications: " << evt_sim_reps(sim.get())
            << ", median sup distance: " << sup_median << "\n";
  return finish_sim(sim.get(), o);
}

int run_sim_hill(Flags& f) {
  const auto n = f.count("n");
  const auto k = f.count("k");
  const auto reps = f.count("reps");
  const auto seed = f.seed("seed");
  const std::string expr = f.text("f");
  const SimOutputs o{f.text("out", "-"), f.text("summary-out")};
  Dist dist;
  if (f.given("family") || f.given("dsl-file")) {
    dist = select_distribution(f, true);
  } else {
    const auto gamma = f.real("gamma");
    const auto rho = f.real("rho");
    for (const char* p : {"a", "b", "c"}) {
      if (f.given(p)) f.errors.push_back(std::string("--") + p + " requires --family");
    }
    if (f.errors.empty()) {
      evt_dist* raw = nullptr;
      const evt_status st = evt_dist_hill_reference(gamma.value_or(1), rho.value_or(-1), &raw);
      if (st != EVT_OK) {
        f.errors.push_back(last_error_text());
      }
      dist.reset(raw);
    }
  }
  if (int rc = report_config_errors(f, "sim-hill")) return rc;

  evt_sim* raw = nullptr;
  const evt_status st = evt_sim_hill(dist.get(), n.value_or(100000), k.value_or(500),
                                     expr.empty() ? nullptr : expr.c_str(), reps.value_or(200),
                                     seed.value_or(1), &raw);
  if (st != EVT_OK && (st == EVT_E_SYNTAX || st == EVT_E_UNKNOWN_IDENTIFIER)) {
    f.errors.push_back("--f: " + last_error_text());
    return report_config_errors(f, "sim-hill");
  }
  check(st);
  Sim sim(raw);
  double rel_median = 0;
  check(evt_sim_stat(sim.get(), "relative_distance", nullptr, nullptr, &rel_median));
  std::cerr << "replications: " << evt_sim_reps(sim.get())
            << ", median relative distance: " << rel_median << "\n";
  return finish_sim(sim.get(), o);
}

int run_parse_check(Flags& f) {
  const std::string expr = f.text("expr");
  const std::string var = f.text("var", "u");
  const std::string out = f.text("out", "-");
  if (expr.empty() == !f.given("dsl-file")) {
    f.errors.push_back("exactly one of --expr or --dsl-file is required");
  }
  if (int rc = report_config_errors(f, "parse-check")) return rc;

  std::string result;
  try {
    if (!expr.empty()) {
      CString printed;
      check(evt_parse_check(expr.c_str(), var.c_str(), &printed.p));
      result = "expression\n" + printed.str() + "\n";
    } else {
      const std::string text = read_file(f.text("dsl-file"));
      evt_dist* raw = nullptr;
      check(evt_dist_from_dsl(text.c_str(), &raw));
      Dist dist(raw);
      result = "distribution\n" + dist_id(dist.get()) + "\n";
    }
  } catch (const ApiFailure& e) {
    if (!is_usage_status(e.status)) throw;
    std::cerr << "evt parse-check: " << e.message << "\n";
    return kUsage;
  }
  write_output(out, result);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Second order extreme value toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", evt_version());

  std::vector<Command> commands;
  auto command = [&](const std::string& name, const std::string& help,
                     std::function<void(Flags&)> flags, std::function<int(Flags&)> run) {
    CLI::App* sub = app.add_subcommand(name, help);
    auto f = std::make_unique<Flags>(sub);
    flags(*f);
    add_common(*f);
    commands.push_back({sub, std::move(f), std::move(run)});
  };

  command("catalog", "dump the distribution catalog (or the versioned defaults table)",
          [](Flags& f) {
            f.add_switch("defaults", "print the per-family default grids and tolerances instead");
          },
          run_catalog);
  command("table", "tabulate s, S, b and h for every catalog family on a u/x grid",
          [](Flags& f) {
            f.add("u-grid", "comma-separated u values in (0,1) (default 1e-2,1e-4,1e-6)");
            f.add("x-grid", "comma-separated x > 0 (default 0.5,0.8,1.25,2,4)");
          },
          run_table);
  command("verify-soc", "check that the second order ratio converges to h(x)",
          [](Flags& f) {
            add_dist_flags(f);
            f.add("u-grid", "comma-separated u values in (0,1) (default: family defaults)");
            f.add("x-grid", "comma-separated x > 0 (default: family defaults)");
            f.add("tol", "convergence tolerance (default: family default)");
          },
          run_verify_soc);
  command("rho-fit", "estimate rho from the decay of the first order error",
          [](Flags& f) {
            add_dist_flags(f);
            f.add("u-grid", "comma-separated u values in (0,1) (default 1e-3,1e-4,1e-5,1e-6)");
          },
          run_rho_fit);
  command("rep-roundtrip", "rebuild the quantile from its (p, b, c, d) representation",
          [](Flags& f) {
            add_dist_flags(f);
            f.add("u-grid", "comma-separated u values in (0,1) (default 1e-2,1e-4,1e-6)");
            f.add("tol", "relative error bound for the exit status (default 1e-8)");
          },
          run_rep_roundtrip);
  command("rc-check", "evaluate the regularity conditions along an (n, k) schedule",
          [](Flags& f) {
            add_dist_flags(f);
            f.add("n", "comma-separated sample sizes (default 1e4,1e5,1e6)");
            f.add("k", "comma-separated k values, one per n");
            f.add("k-exp", "use k = round(n^p) for this p in (0,1) (default 0.4)");
          },
          run_rc_check);
  command("sim-quantile", "simulate the large quantile process against its Gaussian coupling",
          [](Flags& f) {
            add_dist_flags(f);
            f.add("n", "sample size (default 100000)");
            f.add("k", "number of upper order statistics (default 1000)");
            f.add("alpha", "exponent of the s^(alpha*gamma) weight (default 1)");
            f.add("s-grid", "comma-separated s values in (0,1] (default 0.25,0.5,0.75,1)");
            f.add("reps", "number of replications (default 200)");
            f.add("seed", "base seed (default 1)");
            f.add("summary-out", "optional path for the per-statistic summary CSV");
          },
          run_sim_quantile);
  command("sim-hill", "simulate the weighted Hill statistic against its exponential coupling",
          [](Flags& f) {
            add_dist_flags(f);
            f.add("n", "sample size (default 100000)");
            f.add("k", "number of upper order statistics (default 500)");
            f.add("f", "weight function of j (default 1)");
            f.add("reps", "number of replications (default 200)");
            f.add("seed", "base seed (default 1)");
            f.add("summary-out", "optional path for the per-statistic summary CSV");
          },
          run_sim_hill);
  command("parse-check", "parse an expression or distribution file and print its canonical form",
          [](Flags& f) {
            f.add("expr", "expression to parse");
            f.add("var", "name of the free variable (default u)");
            f.add("dsl-file", "distribution file to load instead of --expr");
          },
          run_parse_check);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  for (auto& c : commands) {
    if (!c.app->parsed()) continue;
    Flags& f = *c.flags;
    if (f.given("config")) f.load_config(f.text("config"));
    try {
      return c.run(f);
    } catch (const ApiFailure& e) {
      std::cerr << "evt " << c.app->get_name() << ": " << evt_status_name(e.status) << ": "
                << e.message << "\n";
      return is_usage_status(e.status) ? kUsage : kNumeric;
    }
  }
  return kUsage;
}
