#pragma once

#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "causal_locus/jet.hpp"

namespace causal {

enum class Func { Sqrt, Exp, Log, Sin, Cos, Tanh, Pow };

const char* func_name(Func f);

// Names an expression may use, each bound to an evaluation slot. Several
// names may share a slot (x1 and x for the first domain coordinate).
class VarTable {
 public:
  VarTable() = default;
  explicit VarTable(const std::vector<std::string>& names);

  void add(const std::string& name, int slot);
  // Slot of name, or -1.
  int slot(std::string_view name) const;
  int slot_count() const noexcept { return slots_; }
  std::vector<std::string> names() const;

  // Domain coordinates x1..xn of a graph over n variables; for n = 2 also
  // the aliases x, y.
  static VarTable domain(int n);
  // Ambient coordinates x0..xn with t as an alias of x0.
  static VarTable spacetime(int n);

 private:
  std::map<std::string, int, std::less<>> names_;
  int slots_ = 0;
};

// Immutable expression tree. Copies share nodes.
class Expr {
 public:
  enum class Kind { Number, Variable, Negate, Add, Sub, Mul, Div, Pow, Call };

  Expr() = default;

  static Expr number(double v);
  static Expr variable(std::string name, int slot);
  static Expr negate(Expr a);
  static Expr binary(Kind op, Expr a, Expr b);
  static Expr call(Func f, std::vector<Expr> args);

  bool valid() const noexcept { return node_ != nullptr; }
  Kind kind() const;
  double number_value() const;
  const std::string& name() const;
  int slot() const;
  Func func() const;
  const std::vector<Expr>& args() const;

  // True if no variable occurs in the tree.
  bool is_constant() const;
  // Largest slot index used plus one (0 for constants).
  int slots_used() const;

  // Fully parenthesized text; parse(str()) reproduces the tree.
  std::string str() const;

  Jet eval(std::span<const Jet> slots) const;
  double eval(std::span<const double> slots) const;
  // Value and first partials with respect to every slot, without building
  // jets. Supports up to kMaxGradientSlots slots.
  double eval_gradient(std::span<const double> slots, std::span<double> grad) const;
  static constexpr int kMaxGradientSlots = 8;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

Expr parse(std::string_view text, const VarTable& vars);
// Each name gets its own slot in list order.
Expr parse(std::string_view text, const std::vector<std::string>& allowed_vars);

// Evaluation keyed by variable name rather than slot.
Jet eval_jet(const Expr& e, const std::map<std::string, Jet, std::less<>>& env);

}  // namespace causal
