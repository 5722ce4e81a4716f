#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "evt/catalog.hpp"

namespace evt::mc {

/// Counter-based generator: the i-th draw of stream `seed` is
/// splitmix64(seed + (i + 1) * 0x9E3779B97F4A7C15). Version-pinned.
inline constexpr const char* kRngVersion = "splitmix64-counter/1";

std::uint64_t splitmix64(std::uint64_t x);

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}
  std::uint64_t at(std::uint64_t i) const;
  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform(std::uint64_t i) const;
  double exponential(std::uint64_t i) const;

 private:
  std::uint64_t seed_;
};

/// Seed of replication r: base ^ splitmix64(r + 1).
std::uint64_t substream_seed(std::uint64_t base, std::uint64_t r);

struct OrderStatSample {
  std::size_t n = 0;
  std::vector<double> uniforms;  // ascending
  std::uint64_t seed = 0;
};

/// Renyi construction: partial sums of n + 1 exponentials, normalized by the last.
OrderStatSample uniform_order_statistics(std::size_t n, std::uint64_t seed);

/// E_j = j log(U_{j+1,n} / U_{j,n}), j = 1..k.
std::vector<double> malmquist_exponentials(const OrderStatSample& sample, std::size_t k);

/// Kolmogorov-Smirnov distance of `values` from the cdf.
double ks_statistic(std::vector<double> values, const std::function<double(double)>& cdf);
/// Asymptotic 1% critical value of sqrt(m) D.
inline constexpr double kKsCritical01 = 1.63;

struct ProcessPath {
  std::vector<double> s_grid;
  std::vector<double> empirical;
  std::vector<double> oracle;
  double sup_distance = 0.0;
};

struct LargeQuantileSpec {
  std::size_t n = 100000;
  std::size_t k = 1000;
  double alpha = 1.0;
  std::vector<double> s_grid{0.25, 0.5, 0.75, 1.0};
};

void validate(const LargeQuantileSpec& spec);

ProcessPath large_quantile_path(const Distribution& dist, const LargeQuantileSpec& spec,
                                std::uint64_t seed);
ProcessPath large_quantile_path(const Distribution& dist, const LargeQuantileSpec& spec,
                                const OrderStatSample& sample);

using Weight = std::function<double(double)>;

struct HillSpec {
  std::size_t n = 100000;
  std::size_t k = 500;
  Weight f = [](double) { return 1.0; };
};

struct HillResult {
  double statistic = 0.0;   // T_n(f)
  double normalized = 0.0;  // T_n(f) / s_n
  double oracle = 0.0;
  double relative_distance = 0.0;  // |normalized - oracle| / (1 + |oracle|)
};

/// X = exp(1 - (u^rho - 1)^(gamma/rho)): log X is reversed Burr shifted to endpoint 1.
Distribution hill_reference_distribution(double gamma, double rho);

HillResult hill_statistic(const Distribution& dist, const HillSpec& spec, std::uint64_t seed);
HillResult hill_statistic(const Distribution& dist, const HillSpec& spec,
                          const OrderStatSample& sample);

inline constexpr double kRcLambda = 1.5;

struct RcRow {
  std::size_t n = 0;
  std::size_t k = 0;
  double rep_column = 0.0;  // sqrt(k) sup_{t <= lambda k/n} max(|p(t)|, |b(t)|)
  double soc_column = 0.0;  // sqrt(k) |S(k/n)|, NaN when not applicable
};

enum class Trend { Decreasing, Increasing, Mixed, NotApplicable };
const char* to_string(Trend t);

struct RcReport {
  std::string dist_id;
  std::vector<RcRow> rows;
  Trend rep_trend = Trend::Mixed;
  Trend soc_trend = Trend::Mixed;
  bool soc_applicable = true;
};

/// Schedule k = round(n^power) for each n.
std::vector<std::pair<std::size_t, std::size_t>> power_schedule(const std::vector<std::size_t>& ns,
                                                                double power);
RcReport rc_report(const Distribution& dist,
                   const std::vector<std::pair<std::size_t, std::size_t>>& schedule);
std::string rc_csv(const RcReport& report);

/// Exactly rounded running sum (Shewchuk expansion); merging is exact, so the
/// result does not depend on the order of additions.
class ExactSum {
 public:
  void add(double x);
  void merge(const ExactSum& other);
  double value() const;

 private:
  std::vector<double> partials_;
};

class SimSummary {
 public:
  SimSummary() = default;
  SimSummary(std::vector<std::string> labels, std::uint64_t base_seed);

  void add(const std::vector<double>& values);
  void merge(const SimSummary& other);

  std::size_t reps() const { return reps_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::uint64_t base_seed() const { return base_seed_; }
  double mean(std::size_t i) const;
  double variance(std::size_t i) const;
  double quantile(std::size_t i, double q) const;
  const std::vector<double>& sorted(std::size_t i) const { return sorted_[i]; }

 private:
  std::vector<std::string> labels_;
  std::uint64_t base_seed_ = 0;
  std::size_t reps_ = 0;
  std::vector<ExactSum> sum_;
  std::vector<ExactSum> sum_sq_;
  std::vector<std::vector<double>> sorted_;
};

std::string summary_csv(const SimSummary& summary);

/// Worker count: hardware concurrency capped by EVT_THREADS.
unsigned worker_count();

struct SimRun {
  SimSummary summary;
  std::string long_csv;  // one row per (rep, grid point)
};

/// Runs reps replications in parallel; output is independent of thread count.
SimRun replicate_large_quantile(const Distribution& dist, const LargeQuantileSpec& spec,
                                std::size_t reps, std::uint64_t base_seed);
SimRun replicate_hill(const Distribution& dist, const HillSpec& spec, std::size_t reps,
                      std::uint64_t base_seed);

}  // namespace evt::mc
