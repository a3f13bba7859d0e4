#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "revseq/error.hpp"

namespace revseq {

enum class ExprKind : std::uint8_t { Var, Const0, Const1, Not, And, Or, Xor };

/// Immutable boolean expression over named single-bit variables.
///
/// Nodes are shared, so copying an Expr is cheap. Equality is structural.
class Expr {
public:
  /// The constant 0.
  Expr();

  static Expr var(std::string name);
  static Expr constant(bool value);
  static Expr negate(Expr operand);
  static Expr conj(Expr lhs, Expr rhs);
  static Expr disj(Expr lhs, Expr rhs);
  static Expr exclusive(Expr lhs, Expr rhs);

  ExprKind kind() const noexcept;
  /// Variable name; empty for every other kind.
  const std::string& name() const noexcept;
  std::size_t num_children() const noexcept;
  const Expr& child(std::size_t index) const;

  friend bool operator==(const Expr& lhs, const Expr& rhs);

private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node);
  static std::shared_ptr<const Node> constant_node(bool value);

  std::shared_ptr<const Node> node_;
};

using Assignment = std::map<std::string, bool, std::less<>>;

struct OpCounts {
  int xor_count = 0;
  int and_count = 0;
  int or_count = 0;
  int not_count = 0;

  friend bool operator==(const OpCounts&, const OpCounts&) = default;
};

/// Parses the infix grammar: `!` > `&` > `^` > `|`, parentheses, literals 0/1,
/// `#` to end of line is a comment. `origin` offsets reported locations when
/// the expression is embedded in a larger file.
Expr parse_expr(std::string_view text, SourceLocation origin = {1, 1});

/// Throws EvalError naming the first unbound variable.
bool eval_expr(const Expr& expr, const Assignment& assignment);

/// Evaluates with variables resolved through `lookup`; used on hot paths
/// where a map per row would dominate.
bool eval_expr(const Expr& expr, const std::function<bool(const std::string&)>& lookup);

/// Variables in first-appearance order (left to right), without duplicates.
std::vector<std::string> expr_vars(const Expr& expr);

/// Canonical rendering with the minimum parentheses needed to reparse to an
/// identical tree.
std::string format_expr(const Expr& expr);

OpCounts op_counts(const Expr& expr);

bool is_identifier(std::string_view text);

/// An expression lowered to index-addressed variables for repeated
/// evaluation over bit words.
class CompiledExpr {
public:
  /// `vars[i]` is the variable bound to bit i of the evaluation context.
  /// Throws DefinitionError if the expression references a name outside
  /// `vars`.
  CompiledExpr(const Expr& expr, std::span<const std::string> vars);

  bool eval(std::span<const std::uint8_t> bits) const;

private:
  struct Op {
    ExprKind kind;
    std::uint32_t var;
  };
  std::vector<Op> program_;  // postfix
};

}  // namespace revseq
