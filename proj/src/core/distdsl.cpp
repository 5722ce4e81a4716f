#include "evt/distdsl.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace evt::dsl {
namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  double number = 0.0;
  Span span;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      t.span = here();
      if (pos_ >= text_.size()) {
        t.kind = Tok::End;
        t.span.end = pos_;
        out.push_back(t);
        return out;
      }
      const char c = text_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        lex_number(t);
      } else if (std::islower(static_cast<unsigned char>(c)) || c == '_') {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && (std::islower(static_cast<unsigned char>(text_[pos_])) ||
                                       std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
                                       text_[pos_] == '_')) {
          advance();
        }
        t.kind = Tok::Ident;
        t.text = std::string(text_.substr(start, pos_ - start));
      } else {
        switch (c) {
          case '+': t.kind = Tok::Plus; break;
          case '-': t.kind = Tok::Minus; break;
          case '*': t.kind = Tok::Star; break;
          case '/': t.kind = Tok::Slash; break;
          case '^': t.kind = Tok::Caret; break;
          case '(': t.kind = Tok::LParen; break;
          case ')': t.kind = Tok::RParen; break;
          default:
            throw Error(ErrorCode::Syntax, std::string("unexpected character '") + c + "'",
                        line_, column_);
        }
        t.text = std::string(1, c);
        advance();
      }
      t.span.end = pos_;
      out.push_back(std::move(t));
    }
  }

 private:
  Span here() const {
    Span s;
    s.line = line_;
    s.column = column_;
    s.begin = pos_;
    return s;
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
  }

  void lex_number(Token& t) {
    const std::size_t start = pos_;
    const int line = line_, column = column_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        advance();
        ++n;
      }
      return n;
    };
    std::size_t n = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      advance();
      n += digits();
    }
    if (n == 0) throw Error(ErrorCode::Syntax, "malformed number", line, column);
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      advance();
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) advance();
      if (digits() == 0) throw Error(ErrorCode::Syntax, "malformed exponent", line_, column_);
    }
    const std::string_view lexeme = text_.substr(start, pos_ - start);
    double value = 0.0;
    const auto res = std::from_chars(lexeme.data(), lexeme.data() + lexeme.size(), value);
    if (res.ec != std::errc() || res.ptr != lexeme.data() + lexeme.size()) {
      throw Error(ErrorCode::Syntax, "number out of range", line, column);
    }
    t.kind = Tok::Number;
    t.number = value;
    t.text = std::string(lexeme);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

bool is_function(const std::string& name) {
  return name == "log" || name == "exp" || name == "sqrt";
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, const ParseOptions& options)
      : tokens_(std::move(tokens)), options_(options) {}

  std::unique_ptr<Node> run() {
    auto root = expr();
    if (peek().kind != Tok::End) unexpected("end of input");
    return root;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& take() { return tokens_[pos_++]; }

  [[noreturn]] void unexpected(const std::string& wanted) const {
    const Token& t = peek();
    const std::string got = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw Error(ErrorCode::Syntax, "expected " + wanted + " but found " + got, t.span.line,
                t.span.column);
  }

  static std::unique_ptr<Node> binary(NodeKind kind, std::unique_ptr<Node> lhs,
                                      std::unique_ptr<Node> rhs, const Span& op) {
    auto n = std::make_unique<Node>();
    n->kind = kind;
    n->span = lhs->span;
    n->span.end = rhs->span.end;
    (void)op;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
  }

  std::unique_ptr<Node> expr() {
    auto lhs = term();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      const Token& op = take();
      lhs = binary(op.kind == Tok::Plus ? NodeKind::Add : NodeKind::Sub, std::move(lhs), term(),
                   op.span);
    }
    return lhs;
  }

  std::unique_ptr<Node> term() {
    auto lhs = unary();
    while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
      const Token& op = take();
      lhs = binary(op.kind == Tok::Star ? NodeKind::Mul : NodeKind::Div, std::move(lhs), unary(),
                   op.span);
    }
    return lhs;
  }

  // Unary minus binds looser than '^': -u^2 is -(u^2), and u^-2 is u^(-2).
  std::unique_ptr<Node> unary() {
    if (peek().kind == Tok::Minus) {
      const Token& op = take();
      auto n = std::make_unique<Node>();
      n->kind = NodeKind::Neg;
      n->lhs = unary();
      n->span = op.span;
      n->span.end = n->lhs->span.end;
      return n;
    }
    return power();
  }

  std::unique_ptr<Node> power() {
    auto base = atom();
    if (peek().kind == Tok::Caret) {
      const Token& op = take();
      return binary(NodeKind::Pow, std::move(base), unary(), op.span);
    }
    return base;
  }

  std::unique_ptr<Node> atom() {
    const Token& t = peek();
    auto n = std::make_unique<Node>();
    n->span = t.span;
    switch (t.kind) {
      case Tok::Number:
        take();
        n->kind = NodeKind::Constant;
        n->value = t.number;
        return n;
      case Tok::LParen: {
        take();
        auto inner = expr();
        if (peek().kind != Tok::RParen) unexpected("')'");
        take();
        return inner;
      }
      case Tok::Ident: {
        take();
        if (is_function(t.text)) {
          if (peek().kind != Tok::LParen) unexpected("'(' after " + t.text);
          take();
          n->kind = t.text == "log" ? NodeKind::Log
                    : t.text == "exp" ? NodeKind::Exp
                                      : NodeKind::Sqrt;
          n->lhs = expr();
          if (peek().kind != Tok::RParen) unexpected("')'");
          n->span.end = take().span.end;
          return n;
        }
        n->name = t.text;
        if (t.text == options_.variable) {
          n->kind = NodeKind::Variable;
          return n;
        }
        if (options_.parameters && !options_.parameters->count(t.text)) {
          throw Error(ErrorCode::UnknownIdentifier, "unknown identifier '" + t.text + "'",
                      t.span.line, t.span.column);
        }
        n->kind = NodeKind::Parameter;
        return n;
      }
      default:
        unexpected("a number, identifier or '('");
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  const ParseOptions& options_;
};

void collect_parameters(const Node& n, std::set<std::string>& out) {
  if (n.kind == NodeKind::Parameter) out.insert(n.name);
  if (n.lhs) collect_parameters(*n.lhs, out);
  if (n.rhs) collect_parameters(*n.rhs, out);
}

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void print_node(const Node& n, std::string& out) {
  auto bin = [&](const char* op) {
    out += '(';
    print_node(*n.lhs, out);
    out += op;
    print_node(*n.rhs, out);
    out += ')';
  };
  auto call = [&](const char* name) {
    out += name;
    out += '(';
    print_node(*n.lhs, out);
    out += ')';
  };
  switch (n.kind) {
    case NodeKind::Constant: out += format_number(n.value); break;
    case NodeKind::Variable:
    case NodeKind::Parameter: out += n.name; break;
    case NodeKind::Neg:
      out += "(-";
      print_node(*n.lhs, out);
      out += ')';
      break;
    case NodeKind::Log: call("log"); break;
    case NodeKind::Exp: call("exp"); break;
    case NodeKind::Sqrt: call("sqrt"); break;
    case NodeKind::Add: bin(" + "); break;
    case NodeKind::Sub: bin(" - "); break;
    case NodeKind::Mul: bin(" * "); break;
    case NodeKind::Div: bin(" / "); break;
    case NodeKind::Pow: bin("^"); break;
  }
}

template <class Real>
Real eval_node(const Node& n, const Real& v, const Bindings& params) {
  using std::exp;
  using std::log;
  using std::pow;
  using std::sqrt;
  auto violation = [&](const char* what) {
    throw Error(ErrorCode::DomainViolation,
                std::string(what) + " of a non-positive argument", n.span.line, n.span.column);
  };
  switch (n.kind) {
    case NodeKind::Constant: return Real(n.value);
    case NodeKind::Variable: return v;
    case NodeKind::Parameter: {
      auto it = params.find(n.name);
      if (it == params.end()) {
        throw Error(ErrorCode::UnboundParameter, "parameter '" + n.name + "' is not bound",
                    n.span.line, n.span.column);
      }
      return Real(it->second);
    }
    case NodeKind::Neg: return -eval_node(*n.lhs, v, params);
    case NodeKind::Log: {
      const Real a = eval_node(*n.lhs, v, params);
      if (!(a > 0)) violation("log");
      return log(a);
    }
    case NodeKind::Exp: return exp(eval_node(*n.lhs, v, params));
    case NodeKind::Sqrt: {
      const Real a = eval_node(*n.lhs, v, params);
      if (!(a > 0)) violation("sqrt");
      return sqrt(a);
    }
    case NodeKind::Add: return eval_node(*n.lhs, v, params) + eval_node(*n.rhs, v, params);
    case NodeKind::Sub: return eval_node(*n.lhs, v, params) - eval_node(*n.rhs, v, params);
    case NodeKind::Mul: return eval_node(*n.lhs, v, params) * eval_node(*n.rhs, v, params);
    case NodeKind::Div: return eval_node(*n.lhs, v, params) / eval_node(*n.rhs, v, params);
    case NodeKind::Pow: {
      const Real base = eval_node(*n.lhs, v, params);
      const Real e = eval_node(*n.rhs, v, params);
      return pow(base, e);
    }
  }
  return Real(kNaN);
}

class ExprModel final : public QuantileModel {
 public:
  ExprModel(Expr expr, Bindings params) : expr_(std::move(expr)), params_(std::move(params)) {}
  double evaluate(double u) const override { return eval(expr_, u, params_); }
  std::optional<Quad> evaluate_hp(const Quad& u) const override {
    return eval_hp(expr_, u, params_);
  }
  std::string describe() const override { return print(expr_); }

 private:
  Expr expr_;
  Bindings params_;
};

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

double parse_real(const std::string& text, const std::string& key, int line) {
  double v = 0.0;
  const char* first = text.data();
  if (!text.empty() && text[0] == '+') ++first;
  const auto res = std::from_chars(first, text.data() + text.size(), v);
  if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw Error(ErrorCode::Config, "value of '" + key + "' is not a number", line, 1);
  }
  return v;
}

bool valid_identifier(const std::string& s) {
  if (s.empty() || !(std::islower(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s) {
    if (!(std::islower(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c)) ||
          c == '_')) {
      return false;
    }
  }
  return true;
}

}  // namespace

std::vector<std::string> Expr::parameters() const {
  std::set<std::string> names;
  if (root_) collect_parameters(*root_, names);
  return {names.begin(), names.end()};
}

Expr parse(std::string_view text, const ParseOptions& options) {
  if (trim(text).empty()) throw Error(ErrorCode::Syntax, "empty expression", 1, 1);
  Parser parser(Lexer(text).run(), options);
  std::shared_ptr<const Node> root = parser.run();
  return Expr(std::move(root), std::string(text), options.variable);
}

std::string print(const Expr& expr) {
  std::string out;
  print_node(expr.root(), out);
  return out;
}

bool structurally_equal(const Node& a, const Node& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == NodeKind::Constant && a.value != b.value) return false;
  if (a.name != b.name) return false;
  if (static_cast<bool>(a.lhs) != static_cast<bool>(b.lhs)) return false;
  if (static_cast<bool>(a.rhs) != static_cast<bool>(b.rhs)) return false;
  if (a.lhs && !structurally_equal(*a.lhs, *b.lhs)) return false;
  if (a.rhs && !structurally_equal(*a.rhs, *b.rhs)) return false;
  return true;
}

double eval(const Expr& expr, double v, const Bindings& params) {
  return eval_node<double>(expr.root(), v, params);
}

Quad eval_hp(const Expr& expr, const Quad& v, const Bindings& params) {
  return eval_node<Quad>(expr.root(), v, params);
}

std::shared_ptr<const QuantileModel> make_model(Expr expr, Bindings params) {
  for (const auto& name : expr.parameters()) {
    if (!params.count(name)) {
      fail(ErrorCode::UnboundParameter, "parameter '" + name + "' is not bound");
    }
  }
  return std::make_shared<ExprModel>(std::move(expr), std::move(params));
}

std::vector<double> monotonicity_probe() { return geometric_grid(1e-8, 1 - 1e-8, 32); }

Distribution Registry::register_custom(const std::string& name, const Expr& quantile,
                                       const Bindings& params, const TailParams& hints,
                                       std::optional<CustomAux> aux) {
  if (!valid_identifier(name)) {
    fail(ErrorCode::UnsupportedParameter, "custom name must match [a-z_][a-z0-9_]*");
  }
  auto model = make_model(quantile, params);
  double prev = 0.0;
  bool first = true;
  for (double u : monotonicity_probe()) {
    const double q = model->evaluate(u);
    if (!std::isfinite(q)) {
      fail(ErrorCode::NonMonotone, "quantile is not finite at u=" + std::to_string(u));
    }
    if (!first && !(q < prev)) {
      fail(ErrorCode::NonMonotone,
           "quantile must decrease in u; probe failed near u=" + std::to_string(u));
    }
    prev = q;
    first = false;
  }
  Distribution dist = Distribution::custom(name, std::move(model), hints, std::move(aux));
  std::lock_guard lock(mutex_);
  if (entries_.count(name)) fail(ErrorCode::DuplicateName, "'" + name + "' is already registered");
  entries_.emplace(name, dist);
  return dist;
}

std::optional<Distribution> Registry::find(const std::string& name) const {
  std::lock_guard lock(mutex_);
  auto it = entries_.find(name);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

bool Registry::contains(const std::string& name) const {
  std::lock_guard lock(mutex_);
  return entries_.count(name) > 0;
}

void Registry::clear() {
  std::lock_guard lock(mutex_);
  entries_.clear();
}

Registry& global_registry() {
  static Registry registry;
  return registry;
}

DslFile parse_dsl_file(std::string_view text) {
  DslFile file;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  std::set<std::string> seen;
  while (std::getline(in, raw)) {
    ++line;
    const std::string stripped = trim(raw.substr(0, raw.find('#')));
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::Config, "expected key=value", line, 1);
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (!seen.insert(key).second) throw Error(ErrorCode::Config, "duplicate key '" + key + "'", line, 1);
    if (key == "name") file.name = value;
    else if (key == "quantile") file.quantile = value;
    else if (key == "s") file.s = value;
    else if (key == "S") file.S = value;
    else if (key == "h") file.h = value;
    else if (key == "orientation") file.orientation = parse_real(value, key, line) < 0 ? -1 : 1;
    else if (key == "gamma") file.gamma = parse_real(value, key, line);
    else if (key == "rho") file.rho = parse_real(value, key, line);
    else if (key == "endpoint") file.endpoint = parse_real(value, key, line);
    else if (valid_identifier(key)) file.params[key] = parse_real(value, key, line);
    else throw Error(ErrorCode::Config, "unknown key '" + key + "'", line, 1);
  }
  if (file.quantile.empty()) throw Error(ErrorCode::Config, "missing 'quantile' entry");
  if (!file.gamma) throw Error(ErrorCode::Config, "missing 'gamma' tail hint");
  return file;
}

Distribution load_custom(const DslFile& file, Registry& registry) {
  ParseOptions opts;
  for (const auto& [k, v] : file.params) {
    (void)v;
    if (!opts.parameters) opts.parameters.emplace();
    opts.parameters->insert(k);
  }
  if (!opts.parameters) opts.parameters.emplace();
  const Expr q = parse(file.quantile, opts);

  TailParams hints;
  hints.gamma = *file.gamma;
  if (file.rho) hints.rho = *file.rho;
  hints.endpoint = file.endpoint;

  std::optional<CustomAux> aux;
  const int given = !file.s.empty() + !file.S.empty() + !file.h.empty();
  if (given == 3) {
    CustomAux a;
    a.s = make_model(parse(file.s, opts), file.params);
    a.S = make_model(parse(file.S, opts), file.params);
    ParseOptions hx = opts;
    hx.variable = "x";
    a.h = make_model(parse(file.h, hx), file.params);
    a.orientation = file.orientation;
    aux = std::move(a);
  } else if (given != 0) {
    fail(ErrorCode::Config, "auxiliary functions need all of s, S and h");
  }
  return registry.register_custom(file.name, q, file.params, hints, std::move(aux));
}

}  // namespace evt::dsl
