#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "evt/numeric.hpp"

namespace evt {

enum class Family {
  Burr,
  ReversedBurr,
  SinghMaddala,
  LogSinghMaddala,
  Exponential,
  LogExponential,
  Normal,
  Lognormal,
  Logistic,
  Custom,
};

/// Whether a Distribution object stands for F itself or for G(x) = F(e^x).
enum class View { RawF, LogG };

/// Extremal domain used by the quantile representations.
enum class Regime { Frechet, Weibull, Gumbel };

const char* to_string(Family family);
const char* to_string(View view);
const char* to_string(Regime regime);
std::optional<Family> family_from_string(std::string_view name);

struct TailParams {
  double gamma = 0.0;
  double rho = kNaN;  // NaN: no second order condition
  std::optional<double> endpoint;

  bool has_rho() const { return !std::isnan(rho); }
};

using Param = std::pair<std::string, double>;
using ParamList = std::vector<Param>;

/// A quantile function u -> F^{-1}(1 - u) supplied from outside the catalog.
class QuantileModel {
 public:
  virtual ~QuantileModel() = default;
  virtual double evaluate(double u) const = 0;
  /// Extended-precision evaluation when the model supports it.
  virtual std::optional<Quad> evaluate_hp(const Quad& u) const {
    (void)u;
    return std::nullopt;
  }
  virtual std::string describe() const = 0;
};

/// Wraps a plain callable as a QuantileModel.
std::shared_ptr<const QuantileModel> make_native_model(std::function<double(double)> fn,
                                                       std::string description);

/// Optional auxiliary functions attached to a custom distribution. `h` is
/// evaluated with its argument in place of u.
struct CustomAux {
  std::shared_ptr<const QuantileModel> s;
  std::shared_ptr<const QuantileModel> S;
  std::shared_ptr<const QuantileModel> h;
  int orientation = 1;
};

class Distribution {
 public:
  static Distribution burr(double gamma, double rho);
  /// Upper endpoint 0; gamma > 0 is the tail exponent, the extreme-value index is -gamma.
  static Distribution reversed_burr(double gamma, double rho);
  static Distribution singh_maddala(double a, double b, double c);
  static Distribution log_singh_maddala(double a, double b, double c);
  static Distribution exponential();
  static Distribution log_exponential();
  static Distribution normal();
  static Distribution lognormal();
  static Distribution logistic();
  static Distribution custom(std::string name, std::shared_ptr<const QuantileModel> model,
                             TailParams hints, std::optional<CustomAux> aux = std::nullopt);

  /// Builds a catalog family from named parameters; missing or unknown names
  /// and violated constraints raise UnsupportedParameter.
  static Distribution from_params(Family family, const ParamList& params);

  Family family() const { return family_; }
  View view() const { return view_; }
  const TailParams& tail() const { return tail_; }
  const ParamList& params() const { return params_; }
  double param(std::string_view name) const;
  const std::string& custom_name() const { return custom_name_; }
  const std::shared_ptr<const QuantileModel>& custom_model() const { return model_; }
  const std::optional<CustomAux>& custom_aux() const { return aux_; }

  /// Stable identifier, e.g. "burr(gamma=1,rho=-1)" or "log[normal]".
  std::string id() const;

  Regime regime() const;

  /// Distribution of log X; only for families with positive support.
  Distribution log_view() const;

  /// F^{-1}(1 - u), or G^{-1}(1 - u) in the log view.
  double quantile(double u) const;
  bool has_quantile_hp() const;
  Quad quantile_hp(const Quad& u) const;

  /// Analytic dQ/du where the family provides one.
  std::optional<double> quantile_derivative(double u) const;

 private:
  Distribution() = default;

  Family family_ = Family::Custom;
  View view_ = View::RawF;
  TailParams tail_;
  ParamList params_;
  std::string custom_name_;
  std::shared_ptr<const QuantileModel> model_;
  std::optional<CustomAux> aux_;
};

double quantile(const Distribution& dist, double u);
double d_gamma(double gamma, double x);

/// First- and second-order normalizers and the limit function of the
/// quantile-form second order condition. The canonical ratio
///   orientation * [ (Q(ux) - Q(u)) / s(u) - d_gamma(x) ] / S(u)
/// tends to h(x) as u -> 0.
struct AuxProfile {
  std::function<double(double)> s_fn;
  std::function<double(double)> S_fn;
  std::function<double(double)> h_fn;
  std::function<Quad(const Quad&)> s_hp;  // empty when only double precision exists
  int orientation = 1;
  bool degenerate = false;
  double sign_bound = 0.5;  // S keeps one sign on (0, sign_bound]
  std::string s_formula;
  std::string S_formula;
  std::string h_formula;
};

AuxProfile aux_profile(const Distribution& dist);
bool has_aux_profile(const Distribution& dist);

/// Defaults used by verify-soc and friends; versioned together.
inline constexpr const char* kDefaultsVersion = "1";

struct SocDefaults {
  double u_first = 1e-2;
  double u_last = 1e-8;
  int u_points = 7;
  double tol = 1e-3;
  std::vector<double> x_grid{0.5, 0.8, 1.25, 2.0, 4.0};
};

struct FamilyDescriptor {
  Family family;
  std::string name;
  std::vector<std::string> param_names;
  std::string constraints;
  std::string gamma_formula;
  std::string rho_formula;
  std::string s_formula;
  std::string S_formula;
  std::string h_formula;
  bool degenerate = false;
  ParamList default_params;
  SocDefaults defaults;
};

const std::vector<FamilyDescriptor>& list_catalog();
const FamilyDescriptor& describe(Family family);
SocDefaults soc_defaults(const Distribution& dist);
std::vector<double> default_x_grid();
std::vector<double> default_x_grid(const Distribution& dist);
std::vector<double> default_u_grid(const Distribution& dist);

/// catalog.csv: family,param_names,gamma_formula,rho_formula,s_formula,S_formula,h_formula,degenerate
std::string catalog_csv();
/// Versioned defaults table: version,family,u_first,u_last,u_points,tol,x_grid
std::string defaults_csv();

}  // namespace evt
