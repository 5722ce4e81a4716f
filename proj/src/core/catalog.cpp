#include "evt/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "evt/csv.hpp"
#include "evt/normal.hpp"

namespace evt {
namespace {

using std::exp;
using std::log;
using std::pow;

template <class R>
R em1(const R& x) {
  if constexpr (std::is_same_v<R, double>) {
    return std::expm1(x);
  } else {
    if (abs(x) < R(1e-3)) {
      R term = x;
      R sum = x;
      for (int k = 2; k <= 14; ++k) {
        term *= x / k;
        sum += term;
      }
      return sum;
    }
    return exp(x) - 1;
  }
}

bool positive_finite(double v) { return std::isfinite(v) && v > 0; }
bool negative_finite(double v) { return std::isfinite(v) && v < 0; }

void require(bool ok, const std::string& what) {
  if (!ok) fail(ErrorCode::UnsupportedParameter, what);
}

std::string trim_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// Closed-form quantiles u -> F^{-1}(1 - u). R is double or Quad.
template <class R>
R burr_q(double g, double rho, const R& u) {
  return pow(em1(R(rho) * log(u)), R(-g / rho));
}
template <class R>
R reversed_burr_q(double g, double rho, const R& u) {
  return -pow(em1(R(rho) * log(u)), R(g / rho));
}
template <class R>
R sm_q(double a, double b, double c, const R& u) {
  return pow(em1(-log(u) / R(c)) / R(a), R(1.0 / b));
}
template <class R>
R log_sm_q(double a, double b, double c, const R& u) {
  return log(em1(-log(u) / R(c)) / R(a)) / R(b);
}
template <class R>
R exponential_q(const R& u) {
  return -log(u);
}
template <class R>
R log_exponential_q(const R& u) {
  return log(-log(u));
}
template <class R>
R logistic_q(const R& u) {
  return log((R(2) - u) / u);
}

double log_pdf(double z) { return -0.5 * z * z - 0.5 * std::log(2.0 * std::numbers::pi); }

// u / phi(z) for z = Phi^{-1}(1 - u), the de Haan auxiliary of the normal law.
double normal_sigma(double u) {
  const double z = normal::upper_quantile(u);
  return std::exp(std::log(u) - log_pdf(z));
}

double normal_D(double u) {
  const double L = -std::log(u);
  return (0.5 * std::log(4.0 * std::numbers::pi) + 0.5 * std::log(L)) / std::sqrt(2.0 * L);
}

class NativeModel final : public QuantileModel {
 public:
  NativeModel(std::function<double(double)> fn, std::string text)
      : fn_(std::move(fn)), text_(std::move(text)) {}
  double evaluate(double u) const override { return fn_(u); }
  std::string describe() const override { return text_; }

 private:
  std::function<double(double)> fn_;
  std::string text_;
};

std::string family_key(Family f) {
  std::string name = to_string(f);
  std::transform(name.begin(), name.end(), name.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return name;
}

}  // namespace

const char* to_string(Family family) {
  switch (family) {
    case Family::Burr: return "Burr";
    case Family::ReversedBurr: return "ReversedBurr";
    case Family::SinghMaddala: return "SinghMaddala";
    case Family::LogSinghMaddala: return "LogSinghMaddala";
    case Family::Exponential: return "Exponential";
    case Family::LogExponential: return "LogExponential";
    case Family::Normal: return "Normal";
    case Family::Lognormal: return "Lognormal";
    case Family::Logistic: return "Logistic";
    case Family::Custom: return "Custom";
  }
  return "Custom";
}

const char* to_string(View view) { return view == View::RawF ? "RawF" : "LogG"; }

const char* to_string(Regime regime) {
  switch (regime) {
    case Regime::Frechet: return "Frechet";
    case Regime::Weibull: return "Weibull";
    case Regime::Gumbel: return "Gumbel";
  }
  return "Gumbel";
}

std::optional<Family> family_from_string(std::string_view name) {
  std::string key;
  for (char c : name) {
    if (c == '-' || c == '_' || c == ' ') continue;
    key += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  for (Family f : {Family::Burr, Family::ReversedBurr, Family::SinghMaddala,
                   Family::LogSinghMaddala, Family::Exponential, Family::LogExponential,
                   Family::Normal, Family::Lognormal, Family::Logistic, Family::Custom}) {
    if (family_key(f) == key) return f;
  }
  if (key == "sm") return Family::SinghMaddala;
  if (key == "logsm") return Family::LogSinghMaddala;
  if (key == "logexpo") return Family::LogExponential;
  return std::nullopt;
}

std::shared_ptr<const QuantileModel> make_native_model(std::function<double(double)> fn,
                                                       std::string description) {
  return std::make_shared<NativeModel>(std::move(fn), std::move(description));
}

// ---------------------------------------------------------------------------
// Construction

Distribution Distribution::burr(double gamma, double rho) {
  require(positive_finite(gamma), "Burr requires gamma > 0");
  require(negative_finite(rho), "Burr requires rho < 0");
  Distribution d;
  d.family_ = Family::Burr;
  d.params_ = {{"gamma", gamma}, {"rho", rho}};
  d.tail_ = {gamma, rho, std::nullopt};
  return d;
}

Distribution Distribution::reversed_burr(double gamma, double rho) {
  require(positive_finite(gamma), "ReversedBurr requires gamma > 0 (tail exponent)");
  require(negative_finite(rho), "ReversedBurr requires rho < 0");
  Distribution d;
  d.family_ = Family::ReversedBurr;
  d.params_ = {{"gamma", gamma}, {"rho", rho}};
  d.tail_ = {-gamma, rho, 0.0};
  return d;
}

Distribution Distribution::singh_maddala(double a, double b, double c) {
  require(positive_finite(a) && positive_finite(b) && positive_finite(c),
          "SinghMaddala requires a, b, c > 0");
  Distribution d;
  d.family_ = Family::SinghMaddala;
  d.params_ = {{"a", a}, {"b", b}, {"c", c}};
  d.tail_ = {1.0 / (b * c), -1.0 / c, std::nullopt};
  return d;
}

Distribution Distribution::log_singh_maddala(double a, double b, double c) {
  require(positive_finite(a) && positive_finite(b) && positive_finite(c),
          "LogSinghMaddala requires a, b, c > 0");
  Distribution d;
  d.family_ = Family::LogSinghMaddala;
  d.params_ = {{"a", a}, {"b", b}, {"c", c}};
  d.tail_ = {0.0, -1.0 / c, std::nullopt};
  return d;
}

Distribution Distribution::exponential() {
  Distribution d;
  d.family_ = Family::Exponential;
  d.tail_ = {0.0, kNaN, std::nullopt};
  return d;
}

Distribution Distribution::log_exponential() {
  Distribution d;
  d.family_ = Family::LogExponential;
  d.tail_ = {0.0, 0.0, std::nullopt};
  return d;
}

Distribution Distribution::normal() {
  Distribution d;
  d.family_ = Family::Normal;
  d.tail_ = {0.0, 0.0, std::nullopt};
  return d;
}

Distribution Distribution::lognormal() {
  Distribution d;
  d.family_ = Family::Lognormal;
  d.tail_ = {0.0, 0.0, std::nullopt};
  return d;
}

Distribution Distribution::logistic() {
  Distribution d;
  d.family_ = Family::Logistic;
  d.tail_ = {0.0, -1.0, std::nullopt};
  return d;
}

Distribution Distribution::custom(std::string name, std::shared_ptr<const QuantileModel> model,
                                  TailParams hints, std::optional<CustomAux> aux) {
  if (!model) fail(ErrorCode::UnsupportedParameter, "custom distribution needs a quantile model");
  if (hints.has_rho() && hints.rho > 0) {
    fail(ErrorCode::UnsupportedParameter, "rho hint must be <= 0");
  }
  if (hints.gamma < 0 && !hints.endpoint) {
    fail(ErrorCode::UnsupportedParameter, "gamma < 0 requires an endpoint hint");
  }
  Distribution d;
  d.family_ = Family::Custom;
  d.custom_name_ = std::move(name);
  d.model_ = std::move(model);
  d.tail_ = hints;
  d.aux_ = std::move(aux);
  return d;
}

Distribution Distribution::from_params(Family family, const ParamList& params) {
  const auto& desc = describe(family);
  if (family == Family::Custom) {
    fail(ErrorCode::UnsupportedParameter, "custom distributions are registered through the DSL");
  }
  std::vector<double> values;
  for (const auto& name : desc.param_names) {
    auto it = std::find_if(params.begin(), params.end(),
                           [&](const Param& p) { return p.first == name; });
    if (it == params.end()) {
      fail(ErrorCode::UnsupportedParameter,
           std::string(to_string(family)) + " requires parameter '" + name + "'");
    }
    values.push_back(it->second);
  }
  for (const auto& p : params) {
    if (std::find(desc.param_names.begin(), desc.param_names.end(), p.first) ==
        desc.param_names.end()) {
      fail(ErrorCode::UnsupportedParameter,
           std::string(to_string(family)) + " has no parameter '" + p.first + "'");
    }
  }
  switch (family) {
    case Family::Burr: return burr(values[0], values[1]);
    case Family::ReversedBurr: return reversed_burr(values[0], values[1]);
    case Family::SinghMaddala: return singh_maddala(values[0], values[1], values[2]);
    case Family::LogSinghMaddala: return log_singh_maddala(values[0], values[1], values[2]);
    case Family::Exponential: return exponential();
    case Family::LogExponential: return log_exponential();
    case Family::Normal: return normal();
    case Family::Lognormal: return lognormal();
    case Family::Logistic: return logistic();
    case Family::Custom: break;
  }
  fail(ErrorCode::UnsupportedParameter, "unknown family");
}

double Distribution::param(std::string_view name) const {
  for (const auto& p : params_) {
    if (p.first == name) return p.second;
  }
  fail(ErrorCode::UnsupportedParameter, "no parameter " + std::string(name));
}

std::string Distribution::id() const {
  std::string base;
  if (family_ == Family::Custom) {
    base = "custom:" + custom_name_;
  } else {
    base = family_key(family_);
    if (!params_.empty()) {
      base += '(';
      for (std::size_t i = 0; i < params_.size(); ++i) {
        if (i) base += ',';
        base += params_[i].first + '=' + trim_number(params_[i].second);
      }
      base += ')';
    }
  }
  return view_ == View::LogG ? "log[" + base + "]" : base;
}

Regime Distribution::regime() const {
  if (std::fabs(tail_.gamma) < kGammaZero) return Regime::Gumbel;
  if (tail_.gamma > 0) return Regime::Frechet;
  if (!tail_.endpoint) fail(ErrorCode::Unsupported, "Weibull regime without an endpoint");
  return Regime::Weibull;
}

Distribution Distribution::log_view() const {
  if (view_ == View::LogG) fail(ErrorCode::Unsupported, "already a log view");
  switch (family_) {
    case Family::Burr:
    case Family::SinghMaddala:
    case Family::Exponential:
    case Family::Lognormal:
    case Family::Logistic:
    case Family::Custom:
      break;
    default:
      fail(ErrorCode::Unsupported,
           std::string("log view needs positive support; ") + to_string(family_) +
               " takes non-positive values");
  }
  Distribution d = *this;
  d.view_ = View::LogG;
  if (regime() == Regime::Weibull) {
    if (!(*tail_.endpoint > 0)) fail(ErrorCode::Unsupported, "log view needs a positive endpoint");
    d.tail_.endpoint = std::log(*tail_.endpoint);
  } else {
    d.tail_.gamma = 0.0;
    d.tail_.endpoint.reset();
    if (family_ == Family::Exponential || family_ == Family::Lognormal ||
        family_ == Family::Logistic) {
      d.tail_.rho = 0.0;
    }
  }
  return d;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

template <class R>
R raw_quantile(const Distribution& d, const R& u) {
  const auto& p = d.params();
  switch (d.family()) {
    case Family::Burr: return burr_q(p[0].second, p[1].second, u);
    case Family::ReversedBurr: return reversed_burr_q(p[0].second, p[1].second, u);
    case Family::SinghMaddala: return sm_q(p[0].second, p[1].second, p[2].second, u);
    case Family::LogSinghMaddala: return log_sm_q(p[0].second, p[1].second, p[2].second, u);
    case Family::Exponential: return exponential_q(u);
    case Family::LogExponential: return log_exponential_q(u);
    case Family::Logistic: return logistic_q(u);
    case Family::Normal: return R(normal::upper_quantile(to_double(u)));
    case Family::Lognormal: return R(std::exp(normal::upper_quantile(to_double(u))));
    case Family::Custom: {
      if constexpr (std::is_same_v<R, double>) {
        return d.custom_model()->evaluate(u);
      } else {
        auto hp = d.custom_model()->evaluate_hp(u);
        if (!hp) return R(d.custom_model()->evaluate(to_double(u)));
        return *hp;
      }
    }
  }
  return R(kNaN);
}

void check_u(double u) {
  if (!(u > 0.0 && u < 1.0)) fail(ErrorCode::Domain, "quantile requires 0 < u < 1");
}

}  // namespace

double Distribution::quantile(double u) const {
  check_u(u);
  const double q = raw_quantile(*this, u);
  if (view_ == View::RawF) return q;
  if (!(q > 0)) fail(ErrorCode::Domain, "log view of a non-positive quantile");
  return std::log(q);
}

bool Distribution::has_quantile_hp() const {
  switch (family_) {
    case Family::Normal:
    case Family::Lognormal:
      return false;
    case Family::Custom:
      return model_->evaluate_hp(Quad(0.5)).has_value();
    default:
      return true;
  }
}

Quad Distribution::quantile_hp(const Quad& u) const {
  check_u(to_double(u));
  const Quad q = raw_quantile(*this, u);
  if (view_ == View::RawF) return q;
  if (!(q > 0)) fail(ErrorCode::Domain, "log view of a non-positive quantile");
  return log(q);
}

std::optional<double> Distribution::quantile_derivative(double u) const {
  check_u(u);
  double dq = kNaN;
  const auto& p = params_;
  switch (family_) {
    case Family::Burr: {
      const double g = p[0].second, rho = p[1].second;
      const double v = std::pow(u, rho);
      dq = -g * burr_q(g, rho, u) * v / (u * std::expm1(rho * std::log(u)));
      break;
    }
    case Family::ReversedBurr: {
      const double g = p[0].second, rho = p[1].second;
      const double v = std::pow(u, rho);
      dq = g * reversed_burr_q(g, rho, u) * v / (u * std::expm1(rho * std::log(u)));
      break;
    }
    case Family::SinghMaddala:
    case Family::LogSinghMaddala: {
      const double a = p[0].second, b = p[1].second, c = p[2].second;
      const double m = std::expm1(-std::log(u) / c);
      const double lead = -std::pow(u, -1.0 / c) / (b * c * u * m);
      dq = family_ == Family::SinghMaddala ? sm_q(a, b, c, u) * lead : lead;
      break;
    }
    case Family::Exponential: dq = -1.0 / u; break;
    case Family::LogExponential: dq = 1.0 / (u * std::log(u)); break;
    case Family::Logistic: dq = -2.0 / (u * (2.0 - u)); break;
    case Family::Normal: {
      const double z = normal::upper_quantile(u);
      dq = -std::exp(-log_pdf(z));
      break;
    }
    case Family::Lognormal: {
      const double z = normal::upper_quantile(u);
      dq = -std::exp(z - log_pdf(z));
      break;
    }
    case Family::Custom: return std::nullopt;
  }
  if (view_ == View::LogG) dq /= raw_quantile(*this, u);
  return dq;
}

double quantile(const Distribution& dist, double u) { return dist.quantile(u); }

double d_gamma(double gamma, double x) { return d_gamma<double>(gamma, x); }

// ---------------------------------------------------------------------------
// Auxiliary profiles

namespace {

AuxProfile log_exponential_profile() {
  AuxProfile a;
  a.s_fn = [](double u) { return -1.0 / std::log(u); };
  a.s_hp = [](const Quad& u) { return Quad(-1) / log(u); };
  a.S_fn = [](double u) { return 1.0 / std::log(u); };
  a.h_fn = [](double x) {
    const double lx = std::log(x);
    return -lx * lx / 2;
  };
  a.orientation = -1;
  a.s_formula = "-1/log(u)";
  a.S_formula = "1/log(u)";
  a.h_formula = "-(log x)^2/2";
  return a;
}

AuxProfile normal_profile() {
  AuxProfile a;
  a.s_fn = [](double u) { return normal_sigma(u) / (1.0 + normal_D(u)); };
  a.S_fn = [](double u) { return normal_D(u); };
  a.h_fn = [](double x) { return -std::log(x); };
  a.s_formula = "sigma(u)/(1+D(u)); sigma(u)=u/phi(z(u))";
  a.S_formula = "D(u)=(log(4*pi)/2+log(log(1/u))/2)/sqrt(2*log(1/u))";
  a.h_formula = "-log(x)";
  return a;
}

AuxProfile log_sm_profile(double b, double c) {
  AuxProfile a;
  a.s_fn = [b, c](double) { return 1.0 / (b * c); };
  a.s_hp = [b, c](const Quad&) { return Quad(1) / (Quad(b) * Quad(c)); };
  a.S_fn = [c](double u) { return std::pow(u, 1.0 / c); };
  a.h_fn = [c](double x) { return -c * std::expm1(std::log(x) / c); };
  a.s_formula = "1/(b*c)";
  a.S_formula = "u^(1/c)";
  a.h_formula = "c*(1-x^(1/c))";
  return a;
}

AuxProfile raw_profile(const Distribution& d) {
  const auto& p = d.params();
  AuxProfile a;
  switch (d.family()) {
    case Family::Burr: {
      const double g = p[0].second, rho = p[1].second;
      a.s_fn = [g, rho](double u) { return g * burr_q(g, rho, u); };
      a.s_hp = [g, rho](const Quad& u) { return Quad(g) * burr_q(g, rho, u); };
      a.S_fn = [rho](double u) { return 1.0 / std::expm1(rho * std::log(u)); };
      a.h_fn = [g, rho](double x) {
        return -std::expm1(rho * std::log(x)) * std::pow(x, -g - rho) / rho;
      };
      a.s_formula = "gamma*Q(u)";
      a.S_formula = "1/(u^rho-1)";
      a.h_formula = "-(x^rho-1)*x^(-gamma-rho)/rho";
      return a;
    }
    case Family::ReversedBurr: {
      const double g = p[0].second, rho = p[1].second;
      a.s_fn = [g, rho](double u) { return -g * reversed_burr_q(g, rho, u); };
      a.s_hp = [g, rho](const Quad& u) { return -Quad(g) * reversed_burr_q(g, rho, u); };
      a.S_fn = [rho](double u) { return std::pow(u, -rho); };
      a.h_fn = [g, rho](double x) {
        return std::pow(x, g) * std::expm1(-rho * std::log(x)) / rho;
      };
      a.s_formula = "gamma*(0-Q(u))";
      a.S_formula = "u^(-rho)";
      a.h_formula = "-x^gamma*(1-x^(-rho))/rho";
      return a;
    }
    case Family::SinghMaddala: {
      const double pa = p[0].second, b = p[1].second, c = p[2].second;
      a.s_fn = [=](double u) { return sm_q(pa, b, c, u) / (b * c); };
      a.s_hp = [=](const Quad& u) { return sm_q(pa, b, c, u) / (Quad(b) * Quad(c)); };
      a.S_fn = [c](double u) { return 1.0 / std::expm1(-std::log(u) / c); };
      a.h_fn = [b, c](double x) {
        const double lx = std::log(x);
        return c * std::expm1(-lx / c) * std::exp((-1.0 / (b * c) + 1.0 / c) * lx);
      };
      a.s_formula = "Q(u)/(b*c)";
      a.S_formula = "1/(u^(-1/c)-1)";
      a.h_formula = "c*(x^(-1/c)-1)*x^(-1/(b*c)+1/c)";
      return a;
    }
    case Family::LogSinghMaddala: return log_sm_profile(p[1].second, p[2].second);
    case Family::Exponential: {
      a.s_fn = [](double) { return 1.0; };
      a.s_hp = [](const Quad&) { return Quad(1); };
      a.S_fn = [](double) { return 0.0; };
      a.h_fn = [](double) { return 0.0; };
      a.degenerate = true;
      a.s_formula = "1";
      a.S_formula = "n/a";
      a.h_formula = "n/a";
      return a;
    }
    case Family::LogExponential: return log_exponential_profile();
    case Family::Normal: return normal_profile();
    case Family::Lognormal: {
      a.s_fn = [](double u) {
        const double z = normal::upper_quantile(u);
        return std::exp(std::log(u) + z - log_pdf(z));
      };
      a.S_fn = [](double u) {
        const double z = normal::upper_quantile(u);
        return -1.0 + std::exp(std::log(u) - log_pdf(z)) * (1.0 + z);
      };
      a.h_fn = [](double x) {
        const double lx = std::log(x);
        return lx * lx / 2;
      };
      a.s_formula = "u*exp(z(u))/phi(z(u))";
      a.S_formula = "-1+u*(1+z(u))/phi(z(u))";
      a.h_formula = "(log x)^2/2";
      return a;
    }
    case Family::Logistic: {
      a.s_fn = [](double) { return 1.0; };
      a.s_hp = [](const Quad&) { return Quad(1); };
      a.S_fn = [](double u) { return u / 2; };
      a.h_fn = [](double x) { return x - 1; };
      a.orientation = -1;
      a.s_formula = "1";
      a.S_formula = "u/2";
      a.h_formula = "x-1";
      return a;
    }
    case Family::Custom: break;
  }
  fail(ErrorCode::AbsentProfile, "no auxiliary profile");
}

AuxProfile log_view_profile(const Distribution& d) {
  const auto& p = d.params();
  switch (d.family()) {
    case Family::Burr: {
      const double g = p[0].second, rho = p[1].second;
      AuxProfile a;
      a.s_fn = [g](double) { return g; };
      a.s_hp = [g](const Quad&) { return Quad(g); };
      a.S_fn = [rho](double u) { return std::pow(u, -rho); };
      a.h_fn = [rho](double x) { return std::expm1(-rho * std::log(x)) / rho; };
      a.s_formula = "gamma";
      a.S_formula = "u^(-rho)";
      a.h_formula = "(x^(-rho)-1)/rho";
      return a;
    }
    case Family::SinghMaddala: return log_sm_profile(p[1].second, p[2].second);
    case Family::Exponential: return log_exponential_profile();
    case Family::Lognormal: return normal_profile();
    default: break;
  }
  fail(ErrorCode::AbsentProfile, std::string("no auxiliary profile for ") + d.id());
}

AuxProfile custom_profile(const Distribution& d) {
  if (!d.custom_aux() || d.view() != View::RawF) {
    fail(ErrorCode::AbsentProfile, "custom distribution " + d.id() + " has no registered profile");
  }
  const CustomAux aux = *d.custom_aux();
  if (!aux.s || !aux.S || !aux.h) {
    fail(ErrorCode::AbsentProfile, "custom profile needs s, S and h");
  }
  AuxProfile a;
  a.s_fn = [m = aux.s](double u) { return m->evaluate(u); };
  if (aux.s->evaluate_hp(Quad(0.5))) {
    a.s_hp = [m = aux.s](const Quad& u) { return *m->evaluate_hp(u); };
  }
  a.S_fn = [m = aux.S](double u) { return m->evaluate(u); };
  a.h_fn = [m = aux.h](double x) { return m->evaluate(x); };
  a.orientation = aux.orientation >= 0 ? 1 : -1;
  a.s_formula = aux.s->describe();
  a.S_formula = aux.S->describe();
  a.h_formula = aux.h->describe();
  return a;
}

}  // namespace

AuxProfile aux_profile(const Distribution& dist) {
  if (dist.family() == Family::Custom) return custom_profile(dist);
  if (dist.view() == View::LogG) return log_view_profile(dist);
  return raw_profile(dist);
}

bool has_aux_profile(const Distribution& dist) {
  try {
    (void)aux_profile(dist);
    return true;
  } catch (const Error&) {
    return false;
  }
}

// ---------------------------------------------------------------------------
// Catalog listing

const std::vector<FamilyDescriptor>& list_catalog() {
  static const std::vector<FamilyDescriptor> table = [] {
    const SocDefaults standard{1e-2, 1e-8, 7, 1e-3};
    const SocDefaults gaussian{1e-4, 1e-12, 5, 5e-2, {0.5, 0.8, 1.25, 2.0}};
    const SocDefaults loglog{1e-20, 1e-200, 7, 5e-3};
    std::vector<FamilyDescriptor> t;
    t.push_back({Family::Burr, "Burr", {"gamma", "rho"}, "gamma>0;rho<0", "gamma", "rho",
                 "gamma*Q(u)", "1/(u^rho-1)", "-(x^rho-1)*x^(-gamma-rho)/rho", false,
                 {{"gamma", 1.0}, {"rho", -1.0}}, standard});
    t.push_back({Family::ReversedBurr, "ReversedBurr", {"gamma", "rho"}, "gamma>0;rho<0",
                 "-gamma", "rho", "gamma*(0-Q(u))", "u^(-rho)", "-x^gamma*(1-x^(-rho))/rho",
                 false, {{"gamma", 1.0}, {"rho", -1.0}}, standard});
    t.push_back({Family::SinghMaddala, "SinghMaddala", {"a", "b", "c"}, "a>0;b>0;c>0",
                 "1/(b*c)", "-1/c", "Q(u)/(b*c)", "1/(u^(-1/c)-1)",
                 "c*(x^(-1/c)-1)*x^(-1/(b*c)+1/c)", false, {{"a", 1.0}, {"b", 2.0}, {"c", 1.0}},
                 standard});
    t.push_back({Family::LogSinghMaddala, "LogSinghMaddala", {"a", "b", "c"}, "a>0;b>0;c>0",
                 "0", "-1/c", "1/(b*c)", "u^(1/c)", "c*(1-x^(1/c))", false,
                 {{"a", 1.0}, {"b", 2.0}, {"c", 1.0}}, standard});
    t.push_back({Family::Exponential, "Exponential", {}, "", "0", "none", "1", "n/a", "n/a",
                 true, {}, standard});
    t.push_back({Family::LogExponential, "LogExponential", {}, "", "0", "0", "-1/log(u)",
                 "1/log(u)", "-(log x)^2/2", false, {}, loglog});
    t.push_back({Family::Normal, "Normal", {}, "", "0", "0", "sigma(u)/(1+D(u))",
                 "D(u)=(log(4*pi)/2+log(log(1/u))/2)/sqrt(2*log(1/u))", "-log(x)", false, {},
                 gaussian});
    t.push_back({Family::Lognormal, "Lognormal", {}, "", "0", "0", "u*exp(z(u))/phi(z(u))",
                 "-1+u*(1+z(u))/phi(z(u))", "(log x)^2/2", false, {}, gaussian});
    t.push_back({Family::Logistic, "Logistic", {}, "", "0", "-1", "1", "u/2", "x-1", false, {},
                 standard});
    return t;
  }();
  return table;
}

const FamilyDescriptor& describe(Family family) {
  static const FamilyDescriptor custom{Family::Custom, "Custom", {}, "", "hint", "hint",
                                      "registered", "registered", "registered", false, {},
                                      SocDefaults{}};
  for (const auto& d : list_catalog()) {
    if (d.family == family) return d;
  }
  return custom;
}

SocDefaults soc_defaults(const Distribution& dist) {
  if (dist.view() == View::LogG) {
    if (dist.family() == Family::Lognormal) return describe(Family::Normal).defaults;
    if (dist.family() == Family::Exponential) return describe(Family::LogExponential).defaults;
    return SocDefaults{};
  }
  return describe(dist.family()).defaults;
}

std::vector<double> default_x_grid() { return SocDefaults{}.x_grid; }

std::vector<double> default_x_grid(const Distribution& dist) { return soc_defaults(dist).x_grid; }

std::vector<double> default_u_grid(const Distribution& dist) {
  const auto d = soc_defaults(dist);
  return geometric_grid(d.u_first, d.u_last, d.u_points);
}

std::string catalog_csv() {
  std::string out = csv::row({"family", "param_names", "gamma_formula", "rho_formula",
                              "s_formula", "S_formula", "h_formula", "degenerate"});
  for (const auto& d : list_catalog()) {
    std::string names;
    for (std::size_t i = 0; i < d.param_names.size(); ++i) {
      if (i) names += ';';
      names += d.param_names[i];
    }
    out += csv::row({d.name, names, d.gamma_formula, d.rho_formula, d.s_formula, d.S_formula,
                     d.h_formula, d.degenerate ? "true" : "false"});
  }
  return out;
}

std::string defaults_csv() {
  std::string out = csv::row({"version", "family", "u_first", "u_last", "u_points", "tol", "x_grid"});
  for (const auto& d : list_catalog()) {
    std::string xs;
    for (double x : d.defaults.x_grid) {
      if (!xs.empty()) xs += ';';
      xs += csv::format(x);
    }
    out += csv::row({kDefaultsVersion, d.name, csv::format(d.defaults.u_first),
                     csv::format(d.defaults.u_last), std::to_string(d.defaults.u_points),
                     csv::format(d.defaults.tol), xs});
  }
  return out;
}

}  // namespace evt
