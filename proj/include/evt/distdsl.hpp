#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "evt/catalog.hpp"

namespace evt::dsl {

/// 1-based position of a node in its source text; `end` is a byte offset.
struct Span {
  int line = 1;
  int column = 1;
  std::size_t begin = 0;
  std::size_t end = 0;
};

enum class NodeKind { Constant, Variable, Parameter, Neg, Log, Exp, Sqrt, Add, Sub, Mul, Div, Pow };

struct Node {
  NodeKind kind = NodeKind::Constant;
  double value = 0.0;
  std::string name;
  std::unique_ptr<Node> lhs;
  std::unique_ptr<Node> rhs;
  Span span;
};

struct ParseOptions {
  std::string variable = "u";
  /// When set, any other identifier is an UnknownIdentifier error.
  std::optional<std::set<std::string>> parameters;
};

class Expr {
 public:
  Expr() = default;
  Expr(std::shared_ptr<const Node> root, std::string source, std::string variable)
      : root_(std::move(root)), source_(std::move(source)), variable_(std::move(variable)) {}

  const Node& root() const { return *root_; }
  bool empty() const { return !root_; }
  const std::string& source() const { return source_; }
  const std::string& variable() const { return variable_; }

  /// Names of the free parameters, sorted.
  std::vector<std::string> parameters() const;

 private:
  std::shared_ptr<const Node> root_;
  std::string source_;
  std::string variable_;
};

using Bindings = std::map<std::string, double, std::less<>>;

Expr parse(std::string_view text, const ParseOptions& options = {});

/// Fully parenthesized text that parses back to the same tree.
std::string print(const Expr& expr);
bool structurally_equal(const Node& a, const Node& b);

double eval(const Expr& expr, double v, const Bindings& params = {});
Quad eval_hp(const Expr& expr, const Quad& v, const Bindings& params = {});

/// Quantile model backed by an expression with bound parameters.
std::shared_ptr<const QuantileModel> make_model(Expr expr, Bindings params);

/// Session registry of custom distributions. Registrations are serialized.
class Registry {
 public:
  /// Rejects duplicates, unbound parameters and quantiles that fail the
  /// monotonicity probe (32 geometric points in (1e-8, 1 - 1e-8)).
  Distribution register_custom(const std::string& name, const Expr& quantile,
                               const Bindings& params, const TailParams& hints,
                               std::optional<CustomAux> aux = std::nullopt);
  std::optional<Distribution> find(const std::string& name) const;
  bool contains(const std::string& name) const;
  void clear();

 private:
  mutable std::mutex mutex_;
  std::map<std::string, Distribution> entries_;
};

Registry& global_registry();

/// Probe points used by register_custom.
std::vector<double> monotonicity_probe();

/// Contents of a distribution file: key=value lines, '#' comments.
/// Keys: name, quantile, s, S, h (in x), orientation, gamma, rho, endpoint;
/// any other identifier key binds a parameter.
struct DslFile {
  std::string name = "custom";
  std::string quantile;
  std::string s;
  std::string S;
  std::string h;
  int orientation = 1;
  std::optional<double> gamma;
  std::optional<double> rho;
  std::optional<double> endpoint;
  Bindings params;
};

DslFile parse_dsl_file(std::string_view text);

/// Parses every expression of `file` and registers it in `registry`.
Distribution load_custom(const DslFile& file, Registry& registry);

}  // namespace evt::dsl
