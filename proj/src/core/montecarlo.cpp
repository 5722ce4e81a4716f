#include "evt/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "evt/csv.hpp"
#include "evt/representation.hpp"

namespace evt::mc {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t CounterRng::at(std::uint64_t i) const {
  return splitmix64(seed_ + i * 0x9E3779B97F4A7C15ULL);
}

double CounterRng::uniform(std::uint64_t i) const {
  return (static_cast<double>(at(i) >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::exponential(std::uint64_t i) const { return -std::log(uniform(i)); }

std::uint64_t substream_seed(std::uint64_t base, std::uint64_t r) {
  return base ^ splitmix64(r + 1);
}

OrderStatSample uniform_order_statistics(std::size_t n, std::uint64_t seed) {
  if (n < 2) fail(ErrorCode::UnsupportedParameter, "order statistics need n >= 2");
  OrderStatSample sample;
  sample.n = n;
  sample.seed = seed;
  sample.uniforms.resize(n);
  std::vector<double> partial(n + 1);
  for (std::uint64_t attempt = 0;; ++attempt) {
    const CounterRng rng(attempt == 0 ? seed : splitmix64(seed ^ attempt));
    double sum = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
      sum += rng.exponential(i);
      partial[i] = sum;
    }
    bool ties = false;
    for (std::size_t i = 0; i < n; ++i) {
      sample.uniforms[i] = partial[i] / sum;
      if (i > 0 && !(sample.uniforms[i] > sample.uniforms[i - 1])) ties = true;
    }
    if (!ties && sample.uniforms[n - 1] < 1.0) return sample;
  }
}

std::vector<double> malmquist_exponentials(const OrderStatSample& sample, std::size_t k) {
  if (k < 1 || k >= sample.n) fail(ErrorCode::Index, "Malmquist spacings need 1 <= k < n");
  std::vector<double> e(k);
  for (std::size_t j = 1; j <= k; ++j) {
    e[j - 1] = static_cast<double>(j) * std::log(sample.uniforms[j] / sample.uniforms[j - 1]);
  }
  return e;
}

double ks_statistic(std::vector<double> values, const std::function<double(double)>& cdf) {
  std::sort(values.begin(), values.end());
  const double m = static_cast<double>(values.size());
  double d = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double f = cdf(values[i]);
    d = std::max({d, (i + 1) / m - f, f - i / m});
  }
  return d;
}

// ---------------------------------------------------------------------------
// Large-quantile process

void validate(const LargeQuantileSpec& spec) {
  if (spec.k < 1 || 10 * spec.k > spec.n) {
    fail(ErrorCode::UnsupportedParameter, "large-quantile process needs 1 <= k <= n/10");
  }
  if (!(spec.alpha > 0)) fail(ErrorCode::UnsupportedParameter, "alpha must be positive");
  if (spec.s_grid.empty()) fail(ErrorCode::UnsupportedParameter, "s grid is empty");
  for (double s : spec.s_grid) {
    if (!(s > 0 && s <= 1)) fail(ErrorCode::UnsupportedParameter, "s grid must lie in (0, 1]");
    const double ks = std::floor(spec.k / std::pow(s, spec.alpha));
    if (!(ks < static_cast<double>(spec.n))) {
      fail(ErrorCode::UnsupportedParameter,
           "k/s^alpha reaches n at s=" + csv::format(s) + "; shrink k or alpha");
    }
  }
}

ProcessPath large_quantile_path(const Distribution& dist, const LargeQuantileSpec& spec,
                                std::uint64_t seed) {
  validate(spec);
  return large_quantile_path(dist, spec, uniform_order_statistics(spec.n, seed));
}

ProcessPath large_quantile_path(const Distribution& dist, const LargeQuantileSpec& spec,
                                const OrderStatSample& sample) {
  validate(spec);
  if (sample.n != spec.n) fail(ErrorCode::UnsupportedParameter, "sample size differs from n");
  const AuxProfile aux = aux_profile(dist);
  const double n = static_cast<double>(spec.n);
  const double rk = std::sqrt(static_cast<double>(spec.k));
  const double gamma = dist.tail().gamma;
  const double base = spec.k / n;
  const double a = gamma > kGammaZero ? aux.s_fn(base) / gamma : aux.s_fn(base);
  const double coef = gamma > kGammaZero ? -gamma : -1.0;

  ProcessPath path;
  path.s_grid = spec.s_grid;
  for (double s : spec.s_grid) {
    const auto ks = static_cast<std::size_t>(std::floor(spec.k / std::pow(s, spec.alpha)));
    const double l = ks / n;
    const double u = sample.uniforms[ks - 1];
    const double w = rk * (u / l - 1.0);
    const double emp = rk * (dist.quantile(u) - dist.quantile(l)) / a;
    const double orc = coef * std::pow(s, spec.alpha * gamma) * w;
    path.empirical.push_back(emp);
    path.oracle.push_back(orc);
    path.sup_distance = std::max(path.sup_distance, std::fabs(emp - orc));
  }
  return path;
}

// ---------------------------------------------------------------------------
// Functional Hill process

Distribution hill_reference_distribution(double gamma, double rho) {
  if (!(gamma > 0) || !(rho < 0)) {
    fail(ErrorCode::UnsupportedParameter, "reference Hill law needs gamma > 0 and rho < 0");
  }
  auto model = make_native_model(
      [gamma, rho](double u) {
        return std::exp(1.0 - std::pow(std::expm1(rho * std::log(u)), gamma / rho));
      },
      "exp(1 - (u^rho - 1)^(gamma/rho))");
  TailParams hints;
  hints.gamma = -gamma;
  hints.rho = rho;
  hints.endpoint = std::exp(1.0);
  return Distribution::custom("log_shifted_reversed_burr", std::move(model), hints);
}

HillResult hill_statistic(const Distribution& dist, const HillSpec& spec, std::uint64_t seed) {
  return hill_statistic(dist, spec, uniform_order_statistics(spec.n, seed));
}

HillResult hill_statistic(const Distribution& dist, const HillSpec& spec,
                          const OrderStatSample& sample) {
  if (spec.k < 1 || spec.k >= spec.n) fail(ErrorCode::Index, "Hill process needs 1 <= k < n");
  if (sample.n != spec.n) fail(ErrorCode::UnsupportedParameter, "sample size differs from n");
  const Distribution g = dist.view() == View::LogG ? dist : dist.log_view();
  if (g.regime() != Regime::Weibull) {
    fail(ErrorCode::Unsupported, "Hill coupling needs log X with a finite endpoint (gamma < 0)");
  }
  const double y0 = *g.tail().endpoint;
  const double gamma = -g.tail().gamma;
  const std::size_t k = spec.k;

  std::vector<double> logs(k + 1);
  for (std::size_t j = 0; j <= k; ++j) logs[j] = g.quantile(sample.uniforms[j]);
  if (!(logs[0] < y0)) fail(ErrorCode::Domain, "sample maximum is not below the endpoint");

  const auto e = malmquist_exponentials(sample, k);
  std::vector<double> fj(k);
  for (std::size_t j = 0; j < k; ++j) fj[j] = spec.f(static_cast<double>(j + 1));

  HillResult r;
  for (std::size_t j = 0; j < k; ++j) r.statistic += fj[j] * (logs[j] - logs[j + 1]);
  r.normalized = r.statistic / (y0 - logs[k - 1]);

  // F*_j = exp(-sum_{h=j}^{k-1} F_h), accumulated from j = k downwards.
  double tail_sum = 0.0;
  for (std::size_t j = k; j >= 1; --j) {
    const double fjv = gamma / j * e[j - 1];
    r.oracle += fj[j - 1] * std::exp(-tail_sum) * std::expm1(fjv);
    tail_sum += fjv;
  }
  r.relative_distance = std::fabs(r.normalized - r.oracle) / (1.0 + std::fabs(r.oracle));
  return r;
}

// ---------------------------------------------------------------------------
// Regularity conditions

const char* to_string(Trend t) {
  switch (t) {
    case Trend::Decreasing: return "decreasing";
    case Trend::Increasing: return "increasing";
    case Trend::Mixed: return "mixed";
    case Trend::NotApplicable: return "not applicable";
  }
  return "mixed";
}

std::vector<std::pair<std::size_t, std::size_t>> power_schedule(const std::vector<std::size_t>& ns,
                                                                double power) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t n : ns) {
    out.emplace_back(n, static_cast<std::size_t>(std::llround(std::pow(double(n), power))));
  }
  return out;
}

namespace {

Trend trend_of(const std::vector<double>& v) {
  if (v.size() < 2) return Trend::Mixed;
  bool dec = true, inc = true;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] < v[i - 1])) dec = false;
    if (!(v[i] > v[i - 1])) inc = false;
  }
  return dec ? Trend::Decreasing : inc ? Trend::Increasing : Trend::Mixed;
}

}  // namespace

RcReport rc_report(const Distribution& dist,
                   const std::vector<std::pair<std::size_t, std::size_t>>& schedule) {
  const AuxProfile aux = aux_profile(dist);
  const RepTriple rep = build_representation(dist);
  RcReport out;
  out.dist_id = dist.id();
  out.soc_applicable = !aux.degenerate;
  std::vector<double> rep_col, soc_col;
  for (const auto& [n, k] : schedule) {
    if (k < 1 || k >= n) fail(ErrorCode::UnsupportedParameter, "schedule rows need 1 <= k < n");
    RcRow row;
    row.n = n;
    row.k = k;
    const double rk = std::sqrt(static_cast<double>(k));
    const double top = std::min(kRcLambda * k / n, 1.0 - 1e-12);
    double sup = 0.0;
    for (int i = 0; i <= 40; ++i) {
      const double t = std::ldexp(top, -i);
      sup = std::max({sup, std::fabs(rep.b_fn(t)), std::fabs(rep.p_fn(t))});
    }
    row.rep_column = rk * sup;
    row.soc_column = out.soc_applicable ? rk * std::fabs(aux.S_fn(double(k) / n)) : kNaN;
    rep_col.push_back(row.rep_column);
    soc_col.push_back(row.soc_column);
    out.rows.push_back(row);
  }
  out.rep_trend = trend_of(rep_col);
  out.soc_trend = out.soc_applicable ? trend_of(soc_col) : Trend::NotApplicable;
  return out;
}

std::string rc_csv(const RcReport& report) {
  std::string out = csv::row({"n", "k", "sqrt_k_sup_pb", "sqrt_k_abs_S"});
  for (const auto& r : report.rows) {
    out += csv::row({std::to_string(r.n), std::to_string(r.k), csv::format(r.rep_column),
                     report.soc_applicable ? csv::format(r.soc_column) : "not applicable"});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Summaries

void ExactSum::add(double x) {
  std::size_t i = 0;
  for (double y : partials_) {
    if (std::fabs(x) < std::fabs(y)) std::swap(x, y);
    const double hi = x + y;
    const double lo = y - (hi - x);
    if (lo != 0.0) partials_[i++] = lo;
    x = hi;
  }
  partials_.resize(i);
  partials_.push_back(x);
}

void ExactSum::merge(const ExactSum& other) {
  for (double p : other.partials_) add(p);
}

double ExactSum::value() const {
  std::size_t n = partials_.size();
  if (n == 0) return 0.0;
  double hi = partials_[--n];
  double lo = 0.0;
  while (n > 0) {
    const double x = hi;
    const double y = partials_[--n];
    hi = x + y;
    lo = y - (hi - x);
    if (lo != 0.0) break;
  }
  if (n > 0 && ((lo < 0 && partials_[n - 1] < 0) || (lo > 0 && partials_[n - 1] > 0))) {
    const double y = lo * 2;
    const double x = hi + y;
    if (y == x - hi) hi = x;
  }
  return hi;
}

SimSummary::SimSummary(std::vector<std::string> labels, std::uint64_t base_seed)
    : labels_(std::move(labels)),
      base_seed_(base_seed),
      sum_(labels_.size()),
      sum_sq_(labels_.size()),
      sorted_(labels_.size()) {}

void SimSummary::add(const std::vector<double>& values) {
  if (values.size() != labels_.size()) fail(ErrorCode::Index, "summary row has wrong width");
  ++reps_;
  for (std::size_t i = 0; i < values.size(); ++i) {
    sum_[i].add(values[i]);
    const double hi = values[i] * values[i];
    sum_sq_[i].add(hi);
    sum_sq_[i].add(std::fma(values[i], values[i], -hi));
    auto& s = sorted_[i];
    s.insert(std::upper_bound(s.begin(), s.end(), values[i]), values[i]);
  }
}

void SimSummary::merge(const SimSummary& other) {
  if (other.labels_ != labels_) fail(ErrorCode::Index, "summaries have different layouts");
  reps_ += other.reps_;
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    sum_[i].merge(other.sum_[i]);
    sum_sq_[i].merge(other.sum_sq_[i]);
    std::vector<double> merged;
    std::merge(sorted_[i].begin(), sorted_[i].end(), other.sorted_[i].begin(),
               other.sorted_[i].end(), std::back_inserter(merged));
    sorted_[i] = std::move(merged);
  }
}

double SimSummary::mean(std::size_t i) const {
  return reps_ ? sum_[i].value() / static_cast<double>(reps_) : kNaN;
}

double SimSummary::variance(std::size_t i) const {
  if (reps_ < 2) return reps_ == 1 ? 0.0 : kNaN;
  // n * sum(x^2) - sum(x)^2, both terms exact before the final rounding.
  const double n = static_cast<double>(reps_);
  const double s = sum_[i].value();
  const double q = sum_sq_[i].value();
  ExactSum num;
  num.add(q * n);
  num.add(std::fma(q, n, -q * n));
  const double s2 = s * s;
  num.add(-s2);
  num.add(-std::fma(s, s, -s2));
  return std::max(0.0, num.value()) / (n * (n - 1));
}

double SimSummary::quantile(std::size_t i, double q) const {
  const auto& s = sorted_[i];
  if (s.empty()) return kNaN;
  const double pos = q * (s.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, s.size() - 1);
  return s[lo] + (pos - lo) * (s[hi] - s[lo]);
}

std::string summary_csv(const SimSummary& summary) {
  std::string out = csv::row({"label", "count", "mean", "variance", "q05", "q50", "q95"});
  for (std::size_t i = 0; i < summary.labels().size(); ++i) {
    out += csv::row({summary.labels()[i], std::to_string(summary.reps()),
                     csv::format(summary.mean(i)), csv::format(summary.variance(i)),
                     csv::format(summary.quantile(i, 0.05)), csv::format(summary.quantile(i, 0.5)),
                     csv::format(summary.quantile(i, 0.95))});
  }
  return out;
}

unsigned worker_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("EVT_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

namespace {

template <class Result, class Fn>
std::vector<Result> run_parallel(std::size_t reps, Fn&& fn) {
  std::vector<Result> results(reps);
  std::vector<std::exception_ptr> errors(reps);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t r; (r = next.fetch_add(1)) < reps;) {
      try {
        results[r] = fn(r);
      } catch (...) {
        errors[r] = std::current_exception();
      }
    }
  };
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(worker_count(), reps));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < workers; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

}  // namespace

SimRun replicate_large_quantile(const Distribution& dist, const LargeQuantileSpec& spec,
                                std::size_t reps, std::uint64_t base_seed) {
  if (reps < 1) fail(ErrorCode::UnsupportedParameter, "reps must be >= 1");
  validate(spec);
  (void)aux_profile(dist);
  auto paths = run_parallel<ProcessPath>(reps, [&](std::size_t r) {
    return large_quantile_path(dist, spec, substream_seed(base_seed, r));
  });
  std::vector<std::string> labels;
  for (double s : spec.s_grid) labels.push_back("empirical[s=" + csv::format(s) + "]");
  for (double s : spec.s_grid) labels.push_back("oracle[s=" + csv::format(s) + "]");
  labels.push_back("sup_distance");
  SimRun run{SimSummary(labels, base_seed), csv::row({"rep", "s", "empirical", "oracle"})};
  for (std::size_t r = 0; r < reps; ++r) {
    const auto& p = paths[r];
    std::vector<double> row(p.empirical);
    row.insert(row.end(), p.oracle.begin(), p.oracle.end());
    row.push_back(p.sup_distance);
    run.summary.add(row);
    for (std::size_t i = 0; i < p.s_grid.size(); ++i) {
      run.long_csv += csv::row({std::to_string(r), csv::format(p.s_grid[i]),
                                csv::format(p.empirical[i]), csv::format(p.oracle[i])});
    }
  }
  return run;
}

SimRun replicate_hill(const Distribution& dist, const HillSpec& spec, std::size_t reps,
                      std::uint64_t base_seed) {
  if (reps < 1) fail(ErrorCode::UnsupportedParameter, "reps must be >= 1");
  auto results = run_parallel<HillResult>(reps, [&](std::size_t r) {
    return hill_statistic(dist, spec, substream_seed(base_seed, r));
  });
  SimRun run{SimSummary({"statistic", "normalized", "oracle", "relative_distance"}, base_seed),
             csv::row({"rep", "statistic", "normalized", "oracle", "relative_distance"})};
  for (std::size_t r = 0; r < reps; ++r) {
    const auto& h = results[r];
    run.summary.add({h.statistic, h.normalized, h.oracle, h.relative_distance});
    run.long_csv += csv::row({std::to_string(r), csv::format(h.statistic),
                              csv::format(h.normalized), csv::format(h.oracle),
                              csv::format(h.relative_distance)});
  }
  return run;
}

}  // namespace evt::mc
