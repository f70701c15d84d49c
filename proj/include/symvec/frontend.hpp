#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace symvec {

enum class CmpOp { Eq, Ne, Lt, Le, Gt, Ge };

std::string_view cmp_op_text(CmpOp op);  // "==", "!=", ...
CmpOp negate(CmpOp op);                  // == <-> !=, < <-> >=, ...
CmpOp mirror(CmpOp op);                  // operand swap: < <-> >, <= <-> >=

enum class Selector { Arrow, Dot };

struct PathStep {
  Selector selector = Selector::Arrow;
  std::string field;

  bool operator==(const PathStep&) const = default;
};

/// A field chain rooted at a variable, e.g. `obj->foo.bar`.
struct AccessPath {
  std::string base;
  std::vector<PathStep> steps;  // never empty

  /// Selector chain without the base: "->foo.bar".
  std::string text() const;
  /// Full source form: "obj->foo.bar".
  std::string source() const;

  bool operator==(const AccessPath&) const = default;
};

/// Parses "base->f.g" (base required) or "->f.g" (base left empty).
std::optional<AccessPath> parse_access_path(std::string_view text);

struct Expr {
  enum class Kind { IntConst, Var, Call, PathRead, Neg, Cmp, And, Or, Not };

  Kind kind = Kind::IntConst;
  std::int64_t value = 0;      // IntConst
  std::string name;            // Var, Call callee
  CmpOp op = CmpOp::Eq;        // Cmp
  AccessPath path;             // PathRead
  std::vector<Expr> operands;  // Call args; Neg/Not: 1; Cmp/And/Or: 2

  bool operator==(const Expr&) const = default;

  static Expr int_const(std::int64_t v);
  static Expr var(std::string name);
  static Expr call(std::string callee, std::vector<Expr> args);
  static Expr path_read(AccessPath path);
  static Expr neg(Expr e);
  static Expr cmp(CmpOp op, Expr lhs, Expr rhs);
  static Expr logical_and(Expr lhs, Expr rhs);
  static Expr logical_or(Expr lhs, Expr rhs);
  static Expr logical_not(Expr e);

  bool is_logical() const { return kind == Kind::And || kind == Kind::Or || kind == Kind::Not; }
};

struct Lvalue {
  std::string var;                  // plain variable target
  std::optional<AccessPath> path;   // field target; `var` is then empty

  bool operator==(const Lvalue&) const = default;
};

struct Stmt {
  enum class Kind { Assign, ExprStmt, If, While, Return };

  Kind kind = Kind::ExprStmt;
  Lvalue target;              // Assign
  std::optional<Expr> expr;   // Assign rhs, ExprStmt, If/While condition, Return value
  std::vector<Stmt> body;     // If then-branch, While body
  std::vector<Stmt> orelse;   // If else-branch

  bool operator==(const Stmt&) const = default;
};

struct Procedure {
  std::string name;
  std::vector<std::string> params;
  std::vector<Stmt> body;

  bool operator==(const Procedure&) const = default;
};

struct Program {
  std::string source_name;
  std::vector<Procedure> procedures;

  bool operator==(const Program& other) const { return procedures == other.procedures; }
};

/// Parses the C subset documented in docs/grammar.md. Throws Error(Syntax)
/// with a "name:line:col:" prefix on malformed input or duplicate procedures.
Program parse_program(std::string_view source, std::string source_name = "<input>");

/// Canonical source form; parse_program(print_program(p)) == p.
std::string print_program(const Program& program);
std::string print_expr(const Expr& expr);

// ---------------------------------------------------------------------------
// Control-flow graphs

struct CfgEdge {
  std::size_t target = 0;
  bool conditional = false;
  Expr cond;              // atomic (no &&, ||, !) when conditional
  bool polarity = true;   // branch taken when cond evaluates to `polarity`
};

struct BasicBlock {
  std::vector<Stmt> stmts;  // Assign, ExprStmt, or a final Return
  std::vector<CfgEdge> succs;

  bool returns() const { return !stmts.empty() && stmts.back().kind == Stmt::Kind::Return; }
};

/// Acyclic after lowering: every loop body runs zero or one time and every
/// maximal path ends in a Return.
struct Cfg {
  std::string proc_name;
  std::vector<std::string> params;
  std::vector<BasicBlock> blocks;
  std::size_t entry = 0;

  std::size_t assume_edge_count() const;
  /// Number of entry-to-return paths, saturating at `cap`.
  std::uint64_t count_paths(std::uint64_t cap = UINT64_MAX) const;
  /// Kahn topological order; empty if the graph has a cycle.
  std::vector<std::size_t> topological_order() const;
};

Cfg lower_to_cfg(const Procedure& proc);

}  // namespace symvec
