#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "symvec/frontend.hpp"

namespace symvec {

/// Default per-procedure path budget.
inline constexpr std::size_t kDefaultPathBudget = 5000;

struct SymbolicValue {
  enum class Kind { Unknown, Const, RetOf, Path };

  Kind kind = Kind::Unknown;
  std::int64_t value = 0;  // Const
  std::string callee;      // RetOf
  AccessPath path;         // Path

  static SymbolicValue unknown() { return {}; }
  static SymbolicValue constant(std::int64_t v);
  static SymbolicValue ret_of(std::string callee);
  static SymbolicValue of_path(AccessPath p);

  bool operator==(const SymbolicValue&) const = default;
};

/// Variable bindings plus, per variable, the callees its current value was
/// passed to (insertion ordered, no duplicates).
struct SymbolicState {
  std::map<std::string, SymbolicValue> env;
  std::map<std::string, std::vector<std::string>> passed_to;
};

struct CallEvent {
  std::string callee;
  std::vector<SymbolicValue> args;
  /// Callees whose return values flow into the arguments, directly nested or
  /// through a variable.
  std::vector<std::string> nested_sources;
  /// Earlier callees that received a variable also passed to this call.
  std::vector<std::string> shared_with;

  bool operator==(const CallEvent&) const = default;
};

/// Normalized so the non-constant operand is the subject; `op` already
/// reflects the branch polarity.
struct AssumeEvent {
  SymbolicValue subject;
  CmpOp op = CmpOp::Eq;
  SymbolicValue rhs;
  bool polarity = true;
  std::optional<AccessPath> raw_path;

  bool operator==(const AssumeEvent&) const = default;
};

struct StoreEvent {
  AccessPath path;
  SymbolicValue value;

  bool operator==(const StoreEvent&) const = default;
};

struct ReturnEvent {
  std::optional<SymbolicValue> value;

  bool operator==(const ReturnEvent&) const = default;
};

using TraceEvent = std::variant<CallEvent, AssumeEvent, StoreEvent, ReturnEvent>;

struct Trace {
  std::string proc_name;
  std::vector<TraceEvent> events;

  bool operator==(const Trace&) const = default;
};

/// Transfer function for a single expression. Calls found inside `expr`
/// (innermost first) are appended to `calls` when it is non-null.
SymbolicValue resolve_value(SymbolicState& state, const Expr& expr,
                            std::vector<TraceEvent>* calls = nullptr);

/// Depth-first, then-branch first, no feasibility pruning and no memory
/// model. Stops after `budget` traces.
std::vector<Trace> enumerate_paths(const Cfg& cfg, std::size_t budget = kDefaultPathBudget);

// Raw trace dump (docs/trace-format.md).
std::string format_value(const SymbolicValue& v);
SymbolicValue parse_value(const std::string& text);
void write_traces(std::ostream& os, const std::vector<Trace>& traces);
std::vector<Trace> read_traces(std::istream& is);

}  // namespace symvec
