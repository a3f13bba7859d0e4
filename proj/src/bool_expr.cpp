#include "revseq/bool_expr.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace revseq {

struct Expr::Node {
  ExprKind kind;
  std::string name;
  std::vector<Expr> children;
};

namespace {

const std::string kEmptyName;

}  // namespace

std::shared_ptr<const Expr::Node> Expr::constant_node(bool value) {
  static const auto zero = std::make_shared<const Expr::Node>(Expr::Node{ExprKind::Const0, {}, {}});
  static const auto one = std::make_shared<const Expr::Node>(Expr::Node{ExprKind::Const1, {}, {}});
  return value ? one : zero;
}

Expr::Expr() : node_(constant_node(false)) {}

Expr::Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Expr Expr::var(std::string name) {
  if (!is_identifier(name)) {
    throw DefinitionError("invalid variable name '" + name + "'");
  }
  return Expr(std::make_shared<const Node>(Node{ExprKind::Var, std::move(name), {}}));
}

Expr Expr::constant(bool value) { return Expr(constant_node(value)); }

Expr Expr::negate(Expr operand) {
  return Expr(std::make_shared<const Node>(Node{ExprKind::Not, {}, {std::move(operand)}}));
}

Expr Expr::conj(Expr lhs, Expr rhs) {
  return Expr(std::make_shared<const Node>(Node{ExprKind::And, {}, {std::move(lhs), std::move(rhs)}}));
}

Expr Expr::disj(Expr lhs, Expr rhs) {
  return Expr(std::make_shared<const Node>(Node{ExprKind::Or, {}, {std::move(lhs), std::move(rhs)}}));
}

Expr Expr::exclusive(Expr lhs, Expr rhs) {
  return Expr(std::make_shared<const Node>(Node{ExprKind::Xor, {}, {std::move(lhs), std::move(rhs)}}));
}

ExprKind Expr::kind() const noexcept { return node_->kind; }

const std::string& Expr::name() const noexcept {
  return node_->kind == ExprKind::Var ? node_->name : kEmptyName;
}

std::size_t Expr::num_children() const noexcept { return node_->children.size(); }

const Expr& Expr::child(std::size_t index) const { return node_->children.at(index); }

bool operator==(const Expr& lhs, const Expr& rhs) {
  if (lhs.node_ == rhs.node_) return true;
  if (lhs.kind() != rhs.kind() || lhs.name() != rhs.name()) return false;
  if (lhs.num_children() != rhs.num_children()) return false;
  for (std::size_t i = 0; i < lhs.num_children(); ++i) {
    if (!(lhs.child(i) == rhs.child(i))) return false;
  }
  return true;
}

bool is_identifier(std::string_view text) {
  if (text.empty()) return false;
  auto head = static_cast<unsigned char>(text.front());
  if (!std::isalpha(head) && head != '_') return false;
  return std::all_of(text.begin() + 1, text.end(), [](char c) {
    auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || u == '_';
  });
}

// ---------------------------------------------------------------------------
// Parser

namespace {

enum class Tok { Ident, Zero, One, Not, And, Xor, Or, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  SourceLocation loc;
};

const char* describe(Tok kind) {
  switch (kind) {
    case Tok::Ident: return "identifier";
    case Tok::Zero: return "'0'";
    case Tok::One: return "'1'";
    case Tok::Not: return "'!'";
    case Tok::And: return "'&'";
    case Tok::Xor: return "'^'";
    case Tok::Or: return "'|'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::End: return "end of expression";
  }
  return "?";
}

std::vector<Token> tokenize(std::string_view text, SourceLocation origin) {
  std::vector<Token> tokens;
  SourceLocation loc = origin;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++loc.line;
        loc.column = 1;
      } else {
        ++loc.column;
      }
    }
  };
  while (i < text.size()) {
    char c = text[i];
    auto uc = static_cast<unsigned char>(c);
    if (std::isspace(uc)) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    SourceLocation start = loc;
    if (std::isalpha(uc) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      tokens.push_back({Tok::Ident, std::string(text.substr(i, j - i)), start});
      advance(j - i);
      continue;
    }
    if (std::isdigit(uc)) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      std::string digits(text.substr(i, j - i));
      if (digits != "0" && digits != "1") {
        throw ParseError(start, "invalid literal '" + digits + "' (only 0 and 1 are allowed)");
      }
      tokens.push_back({digits == "0" ? Tok::Zero : Tok::One, digits, start});
      advance(j - i);
      continue;
    }
    Tok kind;
    switch (c) {
      case '!': kind = Tok::Not; break;
      case '&': kind = Tok::And; break;
      case '^': kind = Tok::Xor; break;
      case '|': kind = Tok::Or; break;
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      default: {
        std::ostringstream msg;
        if (std::isprint(uc)) {
          msg << "unknown character '" << c << "'";
        } else {
          msg << "unknown character 0x" << std::hex << static_cast<int>(uc);
        }
        throw ParseError(start, msg.str());
      }
    }
    tokens.push_back({kind, std::string(1, c), start});
    advance(1);
  }
  tokens.push_back({Tok::End, "", loc});
  return tokens;
}

class ExprParser {
public:
  explicit ExprParser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Expr parse() {
    Expr e = parse_or();
    if (peek().kind != Tok::End) {
      fail({Tok::And, Tok::Xor, Tok::Or, Tok::End});
    }
    return e;
  }

private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& take() { return tokens_[pos_++]; }

  [[noreturn]] void fail(std::initializer_list<Tok> expected) const {
    const Token& t = peek();
    std::vector<std::string> names;
    for (Tok k : expected) names.emplace_back(describe(k));
    std::string msg = "unexpected " + (t.kind == Tok::End ? std::string("end of expression")
                                                          : "'" + t.text + "'");
    msg += ", expected ";
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (i) msg += i + 1 == names.size() ? " or " : ", ";
      msg += names[i];
    }
    throw ParseError(t.loc, msg, std::move(names));
  }

  Expr parse_or() {
    Expr lhs = parse_xor();
    while (peek().kind == Tok::Or) {
      take();
      lhs = Expr::disj(std::move(lhs), parse_xor());
    }
    return lhs;
  }

  Expr parse_xor() {
    Expr lhs = parse_and();
    while (peek().kind == Tok::Xor) {
      take();
      lhs = Expr::exclusive(std::move(lhs), parse_and());
    }
    return lhs;
  }

  Expr parse_and() {
    Expr lhs = parse_unary();
    while (peek().kind == Tok::And) {
      take();
      lhs = Expr::conj(std::move(lhs), parse_unary());
    }
    return lhs;
  }

  Expr parse_unary() {
    if (peek().kind == Tok::Not) {
      take();
      return Expr::negate(parse_unary());
    }
    return parse_atom();
  }

  Expr parse_atom() {
    switch (peek().kind) {
      case Tok::Ident: return Expr::var(take().text);
      case Tok::Zero: take(); return Expr::constant(false);
      case Tok::One: take(); return Expr::constant(true);
      case Tok::LParen: {
        take();
        Expr inner = parse_or();
        if (peek().kind != Tok::RParen) fail({Tok::RParen, Tok::And, Tok::Xor, Tok::Or});
        take();
        return inner;
      }
      default:
        fail({Tok::Ident, Tok::Zero, Tok::One, Tok::LParen, Tok::Not});
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expr(std::string_view text, SourceLocation origin) {
  return ExprParser(tokenize(text, origin)).parse();
}

// ---------------------------------------------------------------------------
// Evaluation and inspection

bool eval_expr(const Expr& expr, const std::function<bool(const std::string&)>& lookup) {
  switch (expr.kind()) {
    case ExprKind::Var: return lookup(expr.name());
    case ExprKind::Const0: return false;
    case ExprKind::Const1: return true;
    case ExprKind::Not: return !eval_expr(expr.child(0), lookup);
    case ExprKind::And: return eval_expr(expr.child(0), lookup) && eval_expr(expr.child(1), lookup);
    case ExprKind::Or: return eval_expr(expr.child(0), lookup) || eval_expr(expr.child(1), lookup);
    case ExprKind::Xor: return eval_expr(expr.child(0), lookup) != eval_expr(expr.child(1), lookup);
  }
  return false;
}

bool eval_expr(const Expr& expr, const Assignment& assignment) {
  return eval_expr(expr, [&](const std::string& name) {
    auto it = assignment.find(name);
    if (it == assignment.end()) throw EvalError("unbound variable '" + name + "'");
    return it->second;
  });
}

namespace {

void collect_vars(const Expr& e, std::vector<std::string>& out, std::set<std::string, std::less<>>& seen) {
  if (e.kind() == ExprKind::Var) {
    if (seen.insert(e.name()).second) out.push_back(e.name());
    return;
  }
  for (std::size_t i = 0; i < e.num_children(); ++i) collect_vars(e.child(i), out, seen);
}

int precedence(ExprKind kind) {
  switch (kind) {
    case ExprKind::Or: return 1;
    case ExprKind::Xor: return 2;
    case ExprKind::And: return 3;
    case ExprKind::Not: return 4;
    default: return 5;
  }
}

void format_into(const Expr& e, std::string& out) {
  auto operand = [&out](const Expr& child, bool parens) {
    if (parens) out += '(';
    format_into(child, out);
    if (parens) out += ')';
  };
  switch (e.kind()) {
    case ExprKind::Var: out += e.name(); return;
    case ExprKind::Const0: out += '0'; return;
    case ExprKind::Const1: out += '1'; return;
    case ExprKind::Not:
      out += '!';
      operand(e.child(0), precedence(e.child(0).kind()) < precedence(ExprKind::Not));
      return;
    case ExprKind::And:
    case ExprKind::Or:
    case ExprKind::Xor: {
      // Binary operators are left-associative, so a right operand at the
      // same level needs parentheses to reparse to the same tree.
      int level = precedence(e.kind());
      const char* op = e.kind() == ExprKind::And ? " & " : e.kind() == ExprKind::Or ? " | " : " ^ ";
      operand(e.child(0), precedence(e.child(0).kind()) < level);
      out += op;
      operand(e.child(1), precedence(e.child(1).kind()) <= level);
      return;
    }
  }
}

void count_ops(const Expr& e, OpCounts& counts) {
  switch (e.kind()) {
    case ExprKind::Not: ++counts.not_count; break;
    case ExprKind::And: ++counts.and_count; break;
    case ExprKind::Or: ++counts.or_count; break;
    case ExprKind::Xor: ++counts.xor_count; break;
    default: break;
  }
  for (std::size_t i = 0; i < e.num_children(); ++i) count_ops(e.child(i), counts);
}

}  // namespace

std::vector<std::string> expr_vars(const Expr& expr) {
  std::vector<std::string> out;
  std::set<std::string, std::less<>> seen;
  collect_vars(expr, out, seen);
  return out;
}

std::string format_expr(const Expr& expr) {
  std::string out;
  format_into(expr, out);
  return out;
}

OpCounts op_counts(const Expr& expr) {
  OpCounts counts;
  count_ops(expr, counts);
  return counts;
}

// ---------------------------------------------------------------------------
// CompiledExpr

namespace {

void lower(const Expr& e, std::span<const std::string> vars, std::vector<std::pair<ExprKind, std::uint32_t>>& program) {
  for (std::size_t i = 0; i < e.num_children(); ++i) lower(e.child(i), vars, program);
  std::uint32_t index = 0;
  if (e.kind() == ExprKind::Var) {
    auto it = std::find(vars.begin(), vars.end(), e.name());
    if (it == vars.end()) throw DefinitionError("unknown variable '" + e.name() + "'");
    index = static_cast<std::uint32_t>(it - vars.begin());
  }
  program.emplace_back(e.kind(), index);
}

}  // namespace

CompiledExpr::CompiledExpr(const Expr& expr, std::span<const std::string> vars) {
  std::vector<std::pair<ExprKind, std::uint32_t>> program;
  lower(expr, vars, program);
  program_.reserve(program.size());
  for (auto [kind, var] : program) program_.push_back({kind, var});
}

bool CompiledExpr::eval(std::span<const std::uint8_t> bits) const {
  // Expressions here are small; a fixed stack avoids allocation per row.
  std::uint8_t stack[64];
  std::vector<std::uint8_t> overflow;
  std::uint8_t* top = stack;
  if (program_.size() > std::size(stack)) {
    overflow.resize(program_.size());
    top = overflow.data();
  }
  std::uint8_t* const base = top;
  for (const Op& op : program_) {
    switch (op.kind) {
      case ExprKind::Var: *top++ = bits[op.var] & 1u; break;
      case ExprKind::Const0: *top++ = 0; break;
      case ExprKind::Const1: *top++ = 1; break;
      case ExprKind::Not: top[-1] ^= 1u; break;
      case ExprKind::And: --top; top[-1] &= top[0]; break;
      case ExprKind::Or: --top; top[-1] |= top[0]; break;
      case ExprKind::Xor: --top; top[-1] ^= top[0]; break;
    }
  }
  return top != base && top[-1] != 0;
}

}  // namespace revseq
