#include "causal_locus/expr.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>

#include "causal_locus/errors.hpp"

namespace causal {

const char* func_name(Func f) {
  switch (f) {
    case Func::Sqrt: return "sqrt";
    case Func::Exp: return "exp";
    case Func::Log: return "log";
    case Func::Sin: return "sin";
    case Func::Cos: return "cos";
    case Func::Tanh: return "tanh";
    case Func::Pow: return "pow";
  }
  return "?";
}

namespace {

std::optional<Func> lookup_func(std::string_view name) {
  for (Func f : {Func::Sqrt, Func::Exp, Func::Log, Func::Sin, Func::Cos, Func::Tanh, Func::Pow})
    if (name == func_name(f)) return f;
  return std::nullopt;
}

int func_arity(Func f) { return f == Func::Pow ? 2 : 1; }

}  // namespace

// ---------------------------------------------------------------- VarTable

VarTable::VarTable(const std::vector<std::string>& names) {
  for (std::size_t i = 0; i < names.size(); ++i) add(names[i], static_cast<int>(i));
}

void VarTable::add(const std::string& name, int slot) {
  if (lookup_func(name)) throw ValidationError("variable name '" + name + "' is a function name");
  names_[name] = slot;
  slots_ = std::max(slots_, slot + 1);
}

int VarTable::slot(std::string_view name) const {
  auto it = names_.find(name);
  return it == names_.end() ? -1 : it->second;
}

std::vector<std::string> VarTable::names() const {
  std::vector<std::string> out;
  for (const auto& [name, slot] : names_) out.push_back(name);
  return out;
}

VarTable VarTable::domain(int n) {
  VarTable t;
  for (int i = 1; i <= n; ++i) t.add("x" + std::to_string(i), i - 1);
  if (n == 2) {
    t.add("x", 0);
    t.add("y", 1);
  }
  return t;
}

VarTable VarTable::spacetime(int n) {
  VarTable t;
  for (int i = 0; i <= n; ++i) t.add("x" + std::to_string(i), i);
  t.add("t", 0);
  return t;
}

// ---------------------------------------------------------------- Expr nodes

struct Expr::Node {
  Kind kind = Kind::Number;
  double value = 0.0;
  std::string name;
  int slot = -1;
  Func func = Func::Sqrt;
  std::vector<Expr> args;
  bool constant = true;
  int slots_used = 0;
};

namespace {

bool integral_exponent(double c, int& out) {
  if (std::isfinite(c) && c == std::round(c) && std::abs(c) <= 1024.0) {
    out = static_cast<int>(c);
    return true;
  }
  return false;
}

double ipow_double(double a, int e) {
  if (e < 0) {
    if (a == 0.0) throw DomainError("division by zero in negative integer power");
    return 1.0 / ipow_double(a, -e);
  }
  double result = 1.0, base = a;
  unsigned u = static_cast<unsigned>(e);
  while (u) {
    if (u & 1u) result *= base;
    u >>= 1;
    if (u) base *= base;
  }
  return result;
}

}  // namespace

Expr Expr::number(double v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Number;
  n->value = v;
  return Expr(std::move(n));
}

Expr Expr::variable(std::string name, int slot) {
  if (slot < 0) throw ValidationError("variable '" + name + "' has no slot");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Variable;
  n->name = std::move(name);
  n->slot = slot;
  n->constant = false;
  n->slots_used = slot + 1;
  return Expr(std::move(n));
}

Expr Expr::negate(Expr a) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Negate;
  n->constant = a.is_constant();
  n->slots_used = a.slots_used();
  n->args.push_back(std::move(a));
  return Expr(std::move(n));
}

Expr Expr::binary(Kind op, Expr a, Expr b) {
  if (op != Kind::Add && op != Kind::Sub && op != Kind::Mul && op != Kind::Div && op != Kind::Pow)
    throw ValidationError("not a binary operator");
  auto n = std::make_shared<Node>();
  n->kind = op;
  n->constant = a.is_constant() && b.is_constant();
  n->slots_used = std::max(a.slots_used(), b.slots_used());
  n->args.push_back(std::move(a));
  n->args.push_back(std::move(b));
  return Expr(std::move(n));
}

Expr Expr::call(Func f, std::vector<Expr> args) {
  if (static_cast<int>(args.size()) != func_arity(f))
    throw ValidationError(std::string(func_name(f)) + " takes " + std::to_string(func_arity(f)) +
                          " argument(s), got " + std::to_string(args.size()));
  auto n = std::make_shared<Node>();
  n->kind = Kind::Call;
  n->func = f;
  for (const Expr& a : args) {
    n->constant = n->constant && a.is_constant();
    n->slots_used = std::max(n->slots_used, a.slots_used());
  }
  n->args = std::move(args);
  return Expr(std::move(n));
}

Expr::Kind Expr::kind() const { return node_->kind; }
double Expr::number_value() const { return node_->value; }
const std::string& Expr::name() const { return node_->name; }
int Expr::slot() const { return node_->slot; }
Func Expr::func() const { return node_->func; }
const std::vector<Expr>& Expr::args() const { return node_->args; }
bool Expr::is_constant() const { return node_->constant; }
int Expr::slots_used() const { return node_->slots_used; }

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case Expr::Kind::Number:
      return x.value == y.value;
    case Expr::Kind::Variable:
      return x.name == y.name && x.slot == y.slot;
    case Expr::Kind::Call:
      if (x.func != y.func) return false;
      break;
    default:
      break;
  }
  if (x.args.size() != y.args.size()) return false;
  for (std::size_t i = 0; i < x.args.size(); ++i)
    if (!(x.args[i] == y.args[i])) return false;
  return true;
}

std::string Expr::str() const {
  const Node& n = *node_;
  auto bin = [&](const char* op) {
    return "(" + n.args[0].str() + " " + op + " " + n.args[1].str() + ")";
  };
  switch (n.kind) {
    case Kind::Number: {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", n.value);
      return buf;
    }
    case Kind::Variable: return n.name;
    case Kind::Negate: return "(-" + n.args[0].str() + ")";
    case Kind::Add: return bin("+");
    case Kind::Sub: return bin("-");
    case Kind::Mul: return bin("*");
    case Kind::Div: return bin("/");
    case Kind::Pow: return bin("^");
    case Kind::Call: {
      std::string s = std::string(func_name(n.func)) + "(";
      for (std::size_t i = 0; i < n.args.size(); ++i) {
        if (i) s += ", ";
        s += n.args[i].str();
      }
      return s + ")";
    }
  }
  return "";
}

// ---------------------------------------------------------------- evaluation

namespace {

struct DoubleOps {
  double proto = 0.0;
  double constant(double c) const { return c; }
  static double sqrt(double a) {
    if (a < 0.0) throw DomainError("sqrt of negative value " + std::to_string(a));
    return std::sqrt(a);
  }
  static double log(double a) {
    if (!(a > 0.0)) throw DomainError("log of non-positive value " + std::to_string(a));
    return std::log(a);
  }
  static double div(double a, double b) {
    if (b == 0.0) throw DomainError("division by zero");
    return a / b;
  }
  static double real_pow(double a, double c) {
    if (a < 0.0 || (a == 0.0 && c <= 0.0))
      throw DomainError("pow with non-integer exponent needs a positive base, got " +
                        std::to_string(a));
    return std::pow(a, c);
  }
  static double ipow(double a, int e) { return ipow_double(a, e); }
  static double exp(double a) { return std::exp(a); }
  static double sin(double a) { return std::sin(a); }
  static double cos(double a) { return std::cos(a); }
  static double tanh(double a) { return std::tanh(a); }
};

struct JetOps {
  const Jet* proto;
  Jet constant(double c) const { return Jet::constant(c, proto->nvars(), proto->order()); }
  static Jet sqrt(const Jet& a) { return causal::sqrt(a); }
  static Jet log(const Jet& a) { return causal::log(a); }
  static Jet div(const Jet& a, const Jet& b) {
    if (b.value() == 0.0) throw DomainError("division by a jet with zero constant term");
    return a / b;
  }
  static Jet real_pow(const Jet& a, double c) {
    if (a.value() == 0.0 && c <= 0.0)
      throw DomainError("pow with non-positive exponent at zero base");
    return causal::pow(a, c);
  }
  static Jet ipow(const Jet& a, int e) {
    if (e < 0 && a.value() == 0.0) throw DomainError("division by a jet with zero constant term");
    return causal::ipow(a, e);
  }
  static Jet exp(const Jet& a) { return causal::exp(a); }
  static Jet sin(const Jet& a) { return causal::sin(a); }
  static Jet cos(const Jet& a) { return causal::cos(a); }
  static Jet tanh(const Jet& a) { return causal::tanh(a); }
};

double no_variable(const Expr& v) {
  throw ValidationError("variable '" + v.name() + "' in a constant subexpression");
}

double constant_value(const Expr& e);

// Value plus gradient, fixed capacity so evaluation never allocates.
struct Dual {
  double v = 0.0;
  std::array<double, Expr::kMaxGradientSlots> d{};
  int n = 0;

  friend Dual operator+(Dual a, const Dual& b) {
    a.v += b.v;
    for (int i = 0; i < a.n; ++i) a.d[i] += b.d[i];
    return a;
  }
  friend Dual operator-(Dual a, const Dual& b) {
    a.v -= b.v;
    for (int i = 0; i < a.n; ++i) a.d[i] -= b.d[i];
    return a;
  }
  friend Dual operator*(const Dual& a, const Dual& b) {
    Dual r;
    r.n = a.n;
    r.v = a.v * b.v;
    for (int i = 0; i < a.n; ++i) r.d[i] = a.d[i] * b.v + a.v * b.d[i];
    return r;
  }
  Dual operator-() const {
    Dual r = *this;
    r.v = -r.v;
    for (int i = 0; i < n; ++i) r.d[i] = -r.d[i];
    return r;
  }
  // f(v) with derivative df.
  Dual chain(double fv, double df) const {
    Dual r;
    r.n = n;
    r.v = fv;
    for (int i = 0; i < n; ++i) r.d[i] = df * d[i];
    return r;
  }
};

struct DualOps {
  int n;
  Dual constant(double c) const {
    Dual r;
    r.n = n;
    r.v = c;
    return r;
  }
  static Dual sqrt(const Dual& a) {
    if (!(a.v > 0.0)) throw DomainError("sqrt needs a positive argument to be differentiable");
    double s = std::sqrt(a.v);
    return a.chain(s, 0.5 / s);
  }
  static Dual log(const Dual& a) {
    if (!(a.v > 0.0)) throw DomainError("log of non-positive value " + std::to_string(a.v));
    return a.chain(std::log(a.v), 1.0 / a.v);
  }
  static Dual div(const Dual& a, const Dual& b) {
    if (b.v == 0.0) throw DomainError("division by zero");
    return a * b.chain(1.0 / b.v, -1.0 / (b.v * b.v));
  }
  static Dual real_pow(const Dual& a, double c) {
    if (!(a.v > 0.0))
      throw DomainError("pow with non-integer exponent needs a positive base, got " +
                        std::to_string(a.v));
    double p = std::pow(a.v, c);
    return a.chain(p, c * p / a.v);
  }
  static Dual ipow(const Dual& a, int e) {
    if (e == 0) return a.chain(1.0, 0.0);
    double p = ipow_double(a.v, e - 1);
    return a.chain(p * a.v, e * p);
  }
  static Dual exp(const Dual& a) {
    double e = std::exp(a.v);
    return a.chain(e, e);
  }
  static Dual sin(const Dual& a) { return a.chain(std::sin(a.v), std::cos(a.v)); }
  static Dual cos(const Dual& a) { return a.chain(std::cos(a.v), -std::sin(a.v)); }
  static Dual tanh(const Dual& a) {
    double t = std::tanh(a.v);
    return a.chain(t, 1.0 - t * t);
  }
};

template <typename T, typename Ops, typename Leaf>
T eval_node(const Expr& e, const Ops& ops, const Leaf& leaf) {
  using K = Expr::Kind;
  auto power = [&](const Expr& base, const Expr& ex) -> T {
    T b = eval_node<T>(base, ops, leaf);
    if (ex.is_constant()) {
      double c = constant_value(ex);
      int k;
      if (integral_exponent(c, k)) return Ops::ipow(b, k);
      return Ops::real_pow(b, c);
    }
    T x = eval_node<T>(ex, ops, leaf);
    return Ops::exp(x * Ops::log(b));
  };
  switch (e.kind()) {
    case K::Number: return ops.constant(e.number_value());
    case K::Variable: return leaf(e);
    case K::Negate: return -eval_node<T>(e.args()[0], ops, leaf);
    case K::Add: return eval_node<T>(e.args()[0], ops, leaf) + eval_node<T>(e.args()[1], ops, leaf);
    case K::Sub: return eval_node<T>(e.args()[0], ops, leaf) - eval_node<T>(e.args()[1], ops, leaf);
    case K::Mul: return eval_node<T>(e.args()[0], ops, leaf) * eval_node<T>(e.args()[1], ops, leaf);
    case K::Div:
      return Ops::div(eval_node<T>(e.args()[0], ops, leaf), eval_node<T>(e.args()[1], ops, leaf));
    case K::Pow: return power(e.args()[0], e.args()[1]);
    case K::Call: {
      const auto& a = e.args();
      switch (e.func()) {
        case Func::Sqrt: return Ops::sqrt(eval_node<T>(a[0], ops, leaf));
        case Func::Exp: return Ops::exp(eval_node<T>(a[0], ops, leaf));
        case Func::Log: return Ops::log(eval_node<T>(a[0], ops, leaf));
        case Func::Sin: return Ops::sin(eval_node<T>(a[0], ops, leaf));
        case Func::Cos: return Ops::cos(eval_node<T>(a[0], ops, leaf));
        case Func::Tanh: return Ops::tanh(eval_node<T>(a[0], ops, leaf));
        case Func::Pow: return power(a[0], a[1]);
      }
    }
  }
  throw ValidationError("malformed expression node");
}

double constant_value(const Expr& e) { return eval_node<double>(e, DoubleOps{}, no_variable); }

}  // namespace

Jet Expr::eval(std::span<const Jet> slots) const {
  if (slots.empty()) throw ValidationError("jet evaluation needs at least one slot");
  if (slots_used() > static_cast<int>(slots.size()))
    throw ValidationError("expression uses slot " + std::to_string(slots_used() - 1) +
                          " but only " + std::to_string(slots.size()) + " are bound");
  JetOps ops{&slots[0]};
  return eval_node<Jet>(*this, ops, [&](const Expr& v) -> Jet {
    return slots[static_cast<std::size_t>(v.slot())];
  });
}

double Expr::eval(std::span<const double> slots) const {
  if (slots_used() > static_cast<int>(slots.size()))
    throw ValidationError("expression uses slot " + std::to_string(slots_used() - 1) +
                          " but only " + std::to_string(slots.size()) + " are bound");
  return eval_node<double>(*this, DoubleOps{}, [&](const Expr& v) -> double {
    return slots[static_cast<std::size_t>(v.slot())];
  });
}

double Expr::eval_gradient(std::span<const double> slots, std::span<double> grad) const {
  const int n = static_cast<int>(slots.size());
  if (n > kMaxGradientSlots) throw ValidationError("too many slots for gradient evaluation");
  if (grad.size() != slots.size()) throw ValidationError("gradient buffer size mismatch");
  if (slots_used() > n)
    throw ValidationError("expression uses slot " + std::to_string(slots_used() - 1) +
                          " but only " + std::to_string(n) + " are bound");
  Dual r = eval_node<Dual>(*this, DualOps{n}, [&](const Expr& v) -> Dual {
    Dual d;
    d.n = n;
    d.v = slots[static_cast<std::size_t>(v.slot())];
    d.d[static_cast<std::size_t>(v.slot())] = 1.0;
    return d;
  });
  for (int i = 0; i < n; ++i) grad[static_cast<std::size_t>(i)] = r.d[static_cast<std::size_t>(i)];
  return r.v;
}

Jet eval_jet(const Expr& e, const std::map<std::string, Jet, std::less<>>& env) {
  Jet proto = env.empty() ? Jet(1, 0) : env.begin()->second;
  for (const auto& [name, j] : env)
    if (j.nvars() != proto.nvars() || j.order() != proto.order())
      throw ValidationError("jets bound in the environment differ in shape");
  JetOps ops{&proto};
  return eval_node<Jet>(e, ops, [&](const Expr& v) -> Jet {
    auto it = env.find(v.name());
    if (it == env.end()) throw ValidationError("unbound variable '" + v.name() + "'");
    return it->second;
  });
}

// ---------------------------------------------------------------- parser

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };

struct Token {
  Tok kind;
  std::size_t offset;
  std::string_view text;
  double value = 0.0;
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::Number: return "number";
    case Tok::Ident: return "identifier";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Slash: return "'/'";
    case Tok::Caret: return "'^'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::End: return "end of input";
  }
  return "?";
}

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto digit = [&](std::size_t k) { return k < s.size() && std::isdigit(static_cast<unsigned char>(s[k])); };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (digit(i) || (c == '.' && digit(i + 1))) {
      while (digit(i)) ++i;
      if (i < s.size() && s[i] == '.') {
        ++i;
        while (digit(i)) ++i;
      }
      if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        std::size_t k = i + 1;
        if (k < s.size() && (s[k] == '+' || s[k] == '-')) ++k;
        if (!digit(k)) throw ParseError("malformed exponent in number literal", i);
        i = k;
        while (digit(i)) ++i;
      }
      std::string lit(s.substr(start, i - start));
      double v = std::strtod(lit.c_str(), nullptr);
      if (!std::isfinite(v)) throw ParseError("number literal out of range", start);
      out.push_back({Tok::Number, start, s.substr(start, i - start), v});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      out.push_back({Tok::Ident, start, s.substr(start, i - start)});
      continue;
    }
    Tok t;
    switch (c) {
      case '+': t = Tok::Plus; break;
      case '-': t = Tok::Minus; break;
      case '*': t = Tok::Star; break;
      case '/': t = Tok::Slash; break;
      case '^': t = Tok::Caret; break;
      case '(': t = Tok::LParen; break;
      case ')': t = Tok::RParen; break;
      case ',': t = Tok::Comma; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", i);
    }
    out.push_back({t, i, s.substr(i, 1)});
    ++i;
  }
  out.push_back({Tok::End, s.size(), {}});
  return out;
}

// Binding powers. Unary minus sits between '*' and '^' so -x^2 = -(x^2).
constexpr int kAdditive = 10;
constexpr int kMultiplicative = 20;
constexpr int kUnary = 25;
constexpr int kPower = 30;

int left_power(Tok t) {
  switch (t) {
    case Tok::Plus:
    case Tok::Minus: return kAdditive;
    case Tok::Star:
    case Tok::Slash: return kMultiplicative;
    case Tok::Caret: return kPower;
    default: return 0;
  }
}

class Parser {
 public:
  Parser(std::string_view text, const VarTable& vars) : toks_(lex(text)), vars_(vars) {}

  Expr parse_all() {
    if (toks_.front().kind == Tok::End) throw ParseError("empty expression", 0);
    Expr e = expression(0);
    const Token& t = peek();
    if (t.kind == Tok::RParen) throw ParseError("unbalanced parenthesis: unmatched ')'", t.offset);
    if (t.kind != Tok::End) unexpected(t);
    return e;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }

  [[noreturn]] void unexpected(const Token& t) const {
    if (t.kind == Tok::Number || t.kind == Tok::Ident || t.kind == Tok::LParen)
      throw ParseError(std::string("expected an operator before ") + describe(t.kind) +
                           " (implicit multiplication is not supported)",
                       t.offset);
    throw ParseError(std::string("unexpected ") + describe(t.kind), t.offset);
  }

  void expect_close(std::size_t open_offset) {
    const Token& t = peek();
    if (t.kind == Tok::RParen) {
      ++pos_;
      return;
    }
    if (t.kind == Tok::End)
      throw ParseError("unbalanced parenthesis: '(' at offset " + std::to_string(open_offset) +
                           " is never closed",
                       t.offset);
    unexpected(t);
  }

  Expr expression(int min_bp) {
    Expr lhs = prefix();
    for (;;) {
      const Token& t = peek();
      int lbp = left_power(t.kind);
      if (lbp == 0) {
        if (t.kind == Tok::Number || t.kind == Tok::Ident || t.kind == Tok::LParen) unexpected(t);
        return lhs;
      }
      if (lbp <= min_bp) return lhs;
      ++pos_;
      // '^' is right-associative: the right operand may contain another '^'.
      int rbp = t.kind == Tok::Caret ? lbp - 1 : lbp;
      Expr rhs = expression(rbp);
      Expr::Kind k = t.kind == Tok::Plus    ? Expr::Kind::Add
                     : t.kind == Tok::Minus ? Expr::Kind::Sub
                     : t.kind == Tok::Star  ? Expr::Kind::Mul
                     : t.kind == Tok::Slash ? Expr::Kind::Div
                                            : Expr::Kind::Pow;
      lhs = Expr::binary(k, std::move(lhs), std::move(rhs));
    }
  }

  Expr prefix() {
    const Token& t = next();
    switch (t.kind) {
      case Tok::Number: return Expr::number(t.value);
      case Tok::Minus: return Expr::negate(expression(kUnary));
      case Tok::LParen: {
        Expr inner = expression(0);
        expect_close(t.offset);
        return inner;
      }
      case Tok::Ident: return identifier(t);
      case Tok::RParen:
        throw ParseError("unexpected ')'", t.offset);
      case Tok::End:
        throw ParseError("unexpected end of input", t.offset);
      default:
        throw ParseError(std::string("unexpected ") + describe(t.kind), t.offset);
    }
  }

  Expr identifier(const Token& t) {
    if (auto f = lookup_func(t.text)) {
      const Token& open = peek();
      if (open.kind != Tok::LParen)
        throw ParseError("function '" + std::string(t.text) + "' must be followed by '('",
                         open.offset);
      ++pos_;
      std::vector<Expr> args;
      if (peek().kind != Tok::RParen) {
        args.push_back(expression(0));
        while (peek().kind == Tok::Comma) {
          ++pos_;
          args.push_back(expression(0));
        }
      }
      expect_close(open.offset);
      if (static_cast<int>(args.size()) != func_arity(*f))
        throw ParseError(std::string(func_name(*f)) + " takes " + std::to_string(func_arity(*f)) +
                             " argument(s), got " + std::to_string(args.size()),
                         t.offset);
      return Expr::call(*f, std::move(args));
    }
    int slot = vars_.slot(t.text);
    if (slot < 0) {
      std::string allowed;
      for (const auto& n : vars_.names()) allowed += (allowed.empty() ? "" : ", ") + n;
      throw ParseError("unknown identifier '" + std::string(t.text) + "' (allowed: " +
                           (allowed.empty() ? "none" : allowed) + ")",
                       t.offset);
    }
    return Expr::variable(std::string(t.text), slot);
  }

  std::vector<Token> toks_;
  const VarTable& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text, const VarTable& vars) { return Parser(text, vars).parse_all(); }

Expr parse(std::string_view text, const std::vector<std::string>& allowed_vars) {
  return parse(text, VarTable(allowed_vars));
}

}  // namespace causal
