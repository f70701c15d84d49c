#include "symvec/symex.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "symvec/error.hpp"

namespace symvec {

SymbolicValue SymbolicValue::constant(std::int64_t v) {
  SymbolicValue s;
  s.kind = Kind::Const;
  s.value = v;
  return s;
}

SymbolicValue SymbolicValue::ret_of(std::string callee) {
  SymbolicValue s;
  s.kind = Kind::RetOf;
  s.callee = std::move(callee);
  return s;
}

SymbolicValue SymbolicValue::of_path(AccessPath p) {
  SymbolicValue s;
  s.kind = Kind::Path;
  s.path = std::move(p);
  return s;
}

namespace {

void push_unique(std::vector<std::string>& list, const std::string& item) {
  if (std::find(list.begin(), list.end(), item) == list.end()) list.push_back(item);
}

SymbolicValue resolve_call(SymbolicState& state, const Expr& call, std::vector<TraceEvent>* calls) {
  CallEvent ev;
  ev.callee = call.name;
  for (const Expr& arg : call.operands) {
    SymbolicValue v = resolve_value(state, arg, calls);
    if (v.kind == SymbolicValue::Kind::RetOf) push_unique(ev.nested_sources, v.callee);
    ev.args.push_back(std::move(v));
  }
  for (const Expr& arg : call.operands) {
    if (arg.kind != Expr::Kind::Var) continue;
    auto it = state.passed_to.find(arg.name);
    if (it == state.passed_to.end()) continue;
    for (const auto& earlier : it->second) push_unique(ev.shared_with, earlier);
  }
  for (const Expr& arg : call.operands) {
    if (arg.kind == Expr::Kind::Var) push_unique(state.passed_to[arg.name], call.name);
  }
  if (calls) calls->push_back(std::move(ev));
  return SymbolicValue::ret_of(call.name);
}

}  // namespace

SymbolicValue resolve_value(SymbolicState& state, const Expr& expr, std::vector<TraceEvent>* calls) {
  switch (expr.kind) {
    case Expr::Kind::IntConst:
      return SymbolicValue::constant(expr.value);
    case Expr::Kind::Neg: {
      SymbolicValue inner = resolve_value(state, expr.operands[0], calls);
      if (inner.kind == SymbolicValue::Kind::Const) return SymbolicValue::constant(-inner.value);
      return SymbolicValue::unknown();
    }
    case Expr::Kind::Var: {
      auto it = state.env.find(expr.name);
      return it == state.env.end() ? SymbolicValue::unknown() : it->second;
    }
    case Expr::Kind::PathRead:
      return SymbolicValue::of_path(expr.path);
    case Expr::Kind::Call:
      return resolve_call(state, expr, calls);
    case Expr::Kind::Cmp:
    case Expr::Kind::And:
    case Expr::Kind::Or:
    case Expr::Kind::Not:
      for (const Expr& op : expr.operands) resolve_value(state, op, calls);
      return SymbolicValue::unknown();
  }
  return SymbolicValue::unknown();
}

namespace {

class PathEnumerator {
 public:
  PathEnumerator(const Cfg& cfg, std::size_t budget) : cfg_(cfg), budget_(budget) {}

  std::vector<Trace> run() {
    if (!cfg_.blocks.empty() && budget_ > 0) visit(cfg_.entry, SymbolicState{}, {});
    return std::move(out_);
  }

 private:
  void exec(const Stmt& s, SymbolicState& state, std::vector<TraceEvent>& events) {
    switch (s.kind) {
      case Stmt::Kind::Assign: {
        SymbolicValue v = resolve_value(state, *s.expr, &events);
        if (s.target.path) {
          // No memory model: the store is observed but never read back.
          events.push_back(StoreEvent{*s.target.path, std::move(v)});
        } else {
          state.env[s.target.var] = std::move(v);
          state.passed_to.erase(s.target.var);
        }
        break;
      }
      case Stmt::Kind::ExprStmt:
        resolve_value(state, *s.expr, &events);
        break;
      case Stmt::Kind::Return: {
        ReturnEvent ret;
        if (s.expr) ret.value = resolve_value(state, *s.expr, &events);
        events.push_back(std::move(ret));
        break;
      }
      default:
        break;
    }
  }

  void assume(const CfgEdge& edge, SymbolicState& state, std::vector<TraceEvent>& events) {
    const Expr& c = edge.cond;
    AssumeEvent ev;
    ev.polarity = edge.polarity;
    const Expr* subject_expr = &c;
    if (c.kind == Expr::Kind::Cmp) {
      SymbolicValue lhs = resolve_value(state, c.operands[0], &events);
      SymbolicValue rhs = resolve_value(state, c.operands[1], &events);
      CmpOp op = c.op;
      subject_expr = &c.operands[0];
      if (lhs.kind == SymbolicValue::Kind::Const && rhs.kind != SymbolicValue::Kind::Const) {
        std::swap(lhs, rhs);
        op = mirror(op);
        subject_expr = &c.operands[1];
      }
      ev.subject = std::move(lhs);
      ev.rhs = std::move(rhs);
      ev.op = op;
    } else {
      // A bare condition `e` means `e != 0`.
      ev.subject = resolve_value(state, c, &events);
      ev.op = CmpOp::Ne;
      ev.rhs = SymbolicValue::constant(0);
    }
    if (!edge.polarity) ev.op = negate(ev.op);
    if (subject_expr->kind == Expr::Kind::PathRead) ev.raw_path = subject_expr->path;
    events.push_back(std::move(ev));
  }

  void visit(std::size_t block_id, SymbolicState state, std::vector<TraceEvent> events) {
    const BasicBlock& block = cfg_.blocks[block_id];
    for (const Stmt& s : block.stmts) exec(s, state, events);
    if (block.returns() || block.succs.empty()) {
      out_.push_back(Trace{cfg_.proc_name, std::move(events)});
      return;
    }
    for (std::size_t i = 0; i < block.succs.size(); ++i) {
      if (out_.size() >= budget_) return;
      const CfgEdge& edge = block.succs[i];
      bool last = i + 1 == block.succs.size();
      SymbolicState next_state = last ? std::move(state) : state;
      std::vector<TraceEvent> next_events = last ? std::move(events) : events;
      if (edge.conditional) assume(edge, next_state, next_events);
      visit(edge.target, std::move(next_state), std::move(next_events));
    }
  }

  const Cfg& cfg_;
  std::size_t budget_;
  std::vector<Trace> out_;
};

}  // namespace

std::vector<Trace> enumerate_paths(const Cfg& cfg, std::size_t budget) {
  return PathEnumerator(cfg, budget).run();
}

// ---------------------------------------------------------------------------
// Raw trace dump

std::string format_value(const SymbolicValue& v) {
  switch (v.kind) {
    case SymbolicValue::Kind::Unknown: return "?";
    case SymbolicValue::Kind::Const: return "c:" + std::to_string(v.value);
    case SymbolicValue::Kind::RetOf: return "ret:" + v.callee;
    case SymbolicValue::Kind::Path: return "path:" + v.path.source();
  }
  return "?";
}

SymbolicValue parse_value(const std::string& text) {
  if (text == "?") return SymbolicValue::unknown();
  if (text.rfind("c:", 0) == 0) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data() + 2, text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size())
      throw Error(ErrorKind::Format, "bad constant value '" + text + "'");
    return SymbolicValue::constant(v);
  }
  if (text.rfind("ret:", 0) == 0 && text.size() > 4) return SymbolicValue::ret_of(text.substr(4));
  if (text.rfind("path:", 0) == 0) {
    if (auto p = parse_access_path(text.substr(5)); p && !p->base.empty())
      return SymbolicValue::of_path(std::move(*p));
  }
  throw Error(ErrorKind::Format, "bad symbolic value '" + text + "'");
}

namespace {

std::string join_list(const std::vector<std::string>& items) {
  if (items.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ",";
    out += items[i];
  }
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<std::string> split_list(const std::string& s) {
  if (s == "-") return {};
  return split(s, ',');
}

CmpOp parse_op(const std::string& s) {
  for (CmpOp op : {CmpOp::Eq, CmpOp::Ne, CmpOp::Lt, CmpOp::Le, CmpOp::Gt, CmpOp::Ge})
    if (cmp_op_text(op) == s) return op;
  throw Error(ErrorKind::Format, "bad comparison operator '" + s + "'");
}

}  // namespace

void write_traces(std::ostream& os, const std::vector<Trace>& traces) {
  std::size_t index = 0;
  std::string last_proc;
  for (const Trace& t : traces) {
    if (t.proc_name != last_proc) index = 0;
    last_proc = t.proc_name;
    os << "TRACE\t" << t.proc_name << "\t" << index++ << "\n";
    for (const TraceEvent& ev : t.events) {
      std::visit(
          [&](const auto& e) {
            using T = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<T, CallEvent>) {
              std::vector<std::string> args;
              for (const auto& a : e.args) args.push_back(format_value(a));
              os << "CALL\t" << e.callee << "\t" << join_list(args) << "\t"
                 << join_list(e.nested_sources) << "\t" << join_list(e.shared_with) << "\n";
            } else if constexpr (std::is_same_v<T, AssumeEvent>) {
              os << "ASSUME\t" << format_value(e.subject) << "\t" << cmp_op_text(e.op) << "\t"
                 << format_value(e.rhs) << "\t" << (e.polarity ? "T" : "F") << "\t"
                 << (e.raw_path ? e.raw_path->source() : "-") << "\n";
            } else if constexpr (std::is_same_v<T, StoreEvent>) {
              os << "STORE\t" << e.path.source() << "\t" << format_value(e.value) << "\n";
            } else {
              os << "RETURN\t" << (e.value ? format_value(*e.value) : "-") << "\n";
            }
          },
          ev);
    }
  }
}

std::vector<Trace> read_traces(std::istream& is) {
  std::vector<Trace> out;
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& msg) -> Error {
    return Error(ErrorKind::Format, "trace line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto f = split(line, '\t');
    try {
      if (f[0] == "TRACE") {
        if (f.size() != 3) throw fail("TRACE expects 2 fields");
        out.push_back(Trace{f[1], {}});
        continue;
      }
      if (out.empty()) throw fail("event before first TRACE header");
      auto& events = out.back().events;
      if (f[0] == "CALL") {
        if (f.size() != 5) throw fail("CALL expects 4 fields");
        CallEvent ev;
        ev.callee = f[1];
        for (const auto& a : split_list(f[2])) ev.args.push_back(parse_value(a));
        ev.nested_sources = split_list(f[3]);
        ev.shared_with = split_list(f[4]);
        events.push_back(std::move(ev));
      } else if (f[0] == "ASSUME") {
        if (f.size() != 6) throw fail("ASSUME expects 5 fields");
        AssumeEvent ev;
        ev.subject = parse_value(f[1]);
        ev.op = parse_op(f[2]);
        ev.rhs = parse_value(f[3]);
        if (f[4] != "T" && f[4] != "F") throw fail("polarity must be T or F");
        ev.polarity = f[4] == "T";
        if (f[5] != "-") {
          auto p = parse_access_path(f[5]);
          if (!p) throw fail("bad access path '" + f[5] + "'");
          ev.raw_path = std::move(*p);
        }
        events.push_back(std::move(ev));
      } else if (f[0] == "STORE") {
        if (f.size() != 3) throw fail("STORE expects 2 fields");
        auto p = parse_access_path(f[1]);
        if (!p) throw fail("bad access path '" + f[1] + "'");
        events.push_back(StoreEvent{std::move(*p), parse_value(f[2])});
      } else if (f[0] == "RETURN") {
        if (f.size() != 2) throw fail("RETURN expects 1 field");
        ReturnEvent ev;
        if (f[1] != "-") ev.value = parse_value(f[1]);
        events.push_back(std::move(ev));
      } else {
        throw fail("unknown record '" + f[0] + "'");
      }
    } catch (const Error& e) {
      std::string msg = e.what();
      if (msg.rfind("trace line", 0) == 0) throw;
      throw fail(msg);
    }
  }
  return out;
}

}  // namespace symvec
