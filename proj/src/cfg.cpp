#include <algorithm>
#include <deque>
#include <optional>

#include "symvec/frontend.hpp"

namespace symvec {

namespace {

class CfgBuilder {
 public:
  explicit CfgBuilder(const Procedure& proc) {
    cfg_.proc_name = proc.name;
    cfg_.params = proc.params;
    cfg_.entry = new_block();
    if (auto open = lower_seq(proc.body, cfg_.entry)) {
      Stmt ret;
      ret.kind = Stmt::Kind::Return;
      cfg_.blocks[*open].stmts.push_back(std::move(ret));
    }
  }

  Cfg finish() && {
    prune_unreachable();
    return std::move(cfg_);
  }

 private:
  std::size_t new_block() {
    cfg_.blocks.emplace_back();
    return cfg_.blocks.size() - 1;
  }

  void add_edge(std::size_t from, std::size_t to) {
    CfgEdge e;
    e.target = to;
    cfg_.blocks[from].succs.push_back(std::move(e));
  }

  // Lowers a (possibly compound) condition into nested branches with
  // short-circuit order. `on_true`/`on_false` may be absent, in which case
  // that outcome is truncated. When `flipped`, `on_false` is the source-level
  // then-branch and its edges are emitted first.
  void lower_cond(const Expr& c, std::size_t from, std::optional<std::size_t> on_true,
                  std::optional<std::size_t> on_false, bool flipped) {
    switch (c.kind) {
      case Expr::Kind::Not:
        lower_cond(c.operands[0], from, on_false, on_true, !flipped);
        return;
      case Expr::Kind::And: {
        std::size_t mid = new_block();
        lower_cond(c.operands[0], from, mid, on_false, flipped);
        lower_cond(c.operands[1], mid, on_true, on_false, flipped);
        return;
      }
      case Expr::Kind::Or: {
        std::size_t mid = new_block();
        lower_cond(c.operands[0], from, on_true, mid, flipped);
        lower_cond(c.operands[1], mid, on_true, on_false, flipped);
        return;
      }
      default:
        break;
    }
    auto emit = [&](std::optional<std::size_t> target, bool polarity) {
      if (!target) return;
      CfgEdge e;
      e.target = *target;
      e.conditional = true;
      e.cond = c;
      e.polarity = polarity;
      cfg_.blocks[from].succs.push_back(std::move(e));
    };
    if (!flipped) {
      emit(on_true, true);
      emit(on_false, false);
    } else {
      emit(on_false, false);
      emit(on_true, true);
    }
  }

  // Returns the block control falls out of, or nullopt when every path
  // returned.
  std::optional<std::size_t> lower_seq(const std::vector<Stmt>& body, std::size_t cur) {
    for (const Stmt& s : body) {
      switch (s.kind) {
        case Stmt::Kind::Assign:
        case Stmt::Kind::ExprStmt:
          cfg_.blocks[cur].stmts.push_back(s);
          break;
        case Stmt::Kind::Return:
          cfg_.blocks[cur].stmts.push_back(s);
          return std::nullopt;
        case Stmt::Kind::If: {
          std::size_t then_entry = new_block();
          std::size_t join = new_block();
          std::size_t else_target = join;
          if (!s.orelse.empty()) else_target = new_block();
          lower_cond(*s.expr, cur, then_entry, else_target, false);
          bool reachable = false;
          if (auto end = lower_seq(s.body, then_entry)) {
            add_edge(*end, join);
            reachable = true;
          }
          if (!s.orelse.empty()) {
            if (auto end = lower_seq(s.orelse, else_target)) {
              add_edge(*end, join);
              reachable = true;
            }
          } else {
            reachable = true;
          }
          if (!reachable) return std::nullopt;
          cur = join;
          break;
        }
        case Stmt::Kind::While: {
          // Unrolled once: the taken branch runs the body and then assumes
          // the negated condition on the way out.
          std::size_t body_entry = new_block();
          std::size_t exit = new_block();
          lower_cond(*s.expr, cur, body_entry, exit, false);
          if (auto end = lower_seq(s.body, body_entry)) {
            lower_cond(*s.expr, *end, std::nullopt, exit, false);
          }
          cur = exit;
          break;
        }
      }
    }
    return cur;
  }

  void prune_unreachable() {
    std::vector<bool> seen(cfg_.blocks.size(), false);
    std::deque<std::size_t> work{cfg_.entry};
    seen[cfg_.entry] = true;
    while (!work.empty()) {
      std::size_t b = work.front();
      work.pop_front();
      for (const auto& e : cfg_.blocks[b].succs) {
        if (!seen[e.target]) {
          seen[e.target] = true;
          work.push_back(e.target);
        }
      }
    }
    std::vector<std::size_t> remap(cfg_.blocks.size(), 0);
    std::vector<BasicBlock> kept;
    for (std::size_t i = 0; i < cfg_.blocks.size(); ++i) {
      if (seen[i]) {
        remap[i] = kept.size();
        kept.push_back(std::move(cfg_.blocks[i]));
      }
    }
    for (auto& block : kept)
      for (auto& e : block.succs) e.target = remap[e.target];
    cfg_.entry = remap[cfg_.entry];
    cfg_.blocks = std::move(kept);
  }

  Cfg cfg_;
};

}  // namespace

Cfg lower_to_cfg(const Procedure& proc) { return CfgBuilder(proc).finish(); }

std::size_t Cfg::assume_edge_count() const {
  std::size_t n = 0;
  for (const auto& b : blocks)
    for (const auto& e : b.succs) n += e.conditional ? 1 : 0;
  return n;
}

std::vector<std::size_t> Cfg::topological_order() const {
  std::vector<std::size_t> indegree(blocks.size(), 0);
  for (const auto& b : blocks)
    for (const auto& e : b.succs) ++indegree[e.target];
  std::deque<std::size_t> ready;
  for (std::size_t i = 0; i < blocks.size(); ++i)
    if (indegree[i] == 0) ready.push_back(i);
  std::vector<std::size_t> order;
  while (!ready.empty()) {
    std::size_t b = ready.front();
    ready.pop_front();
    order.push_back(b);
    for (const auto& e : blocks[b].succs)
      if (--indegree[e.target] == 0) ready.push_back(e.target);
  }
  if (order.size() != blocks.size()) return {};
  return order;
}

std::uint64_t Cfg::count_paths(std::uint64_t cap) const {
  auto order = topological_order();
  std::vector<std::uint64_t> paths(blocks.size(), 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const BasicBlock& b = blocks[*it];
    if (b.succs.empty()) {
      paths[*it] = b.returns() ? 1 : 0;
      continue;
    }
    std::uint64_t total = 0;
    for (const auto& e : b.succs) {
      std::uint64_t add = paths[e.target];
      total = (cap - total < add) ? cap : total + add;
    }
    paths[*it] = total;
  }
  return blocks.empty() ? 0 : paths[entry];
}

}  // namespace symvec
