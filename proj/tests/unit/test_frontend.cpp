#include "doctest.h"
#include "helpers.hpp"
#include "symvec/frontend.hpp"

using namespace symvec;
using testutil::error_kind_of;
using testutil::error_message_of;

TEST_CASE("minimal procedure parses to a single return") {
  Program p = parse_program("int f() { return 0; }");
  REQUIRE(p.procedures.size() == 1);
  const Procedure& f = p.procedures[0];
  CHECK(f.name == "f");
  CHECK(f.params.empty());
  REQUIRE(f.body.size() == 1);
  CHECK(f.body[0].kind == Stmt::Kind::Return);
  CHECK(*f.body[0].expr == Expr::int_const(0));
}

TEST_CASE("if condition maps onto a comparison of a call and a constant") {
  Program p = parse_program("int f() { if (g() == 0) { return -12; } return 0; }");
  const auto& body = p.procedures[0].body;
  REQUIRE(body.size() == 2);
  REQUIRE(body[0].kind == Stmt::Kind::If);
  CHECK(*body[0].expr == Expr::cmp(CmpOp::Eq, Expr::call("g", {}), Expr::int_const(0)));
  REQUIRE(body[0].body.size() == 1);
  CHECK(*body[0].body[0].expr == Expr::neg(Expr::int_const(12)));
  CHECK(body[0].orelse.empty());
}

TEST_CASE("truncated input is a syntax error at end of input") {
  auto msg = error_message_of([] { parse_program("int f(", "t.mc"); });
  CHECK(msg.find("t.mc:1:") == 0);
  CHECK(msg.find("end of input") != std::string::npos);
  CHECK(error_kind_of([] { parse_program("int f("); }) == ErrorKind::Syntax);
}

TEST_CASE("syntax errors carry line and column") {
  auto msg = error_message_of([] { parse_program("int f() {\n  x = ;\n}\n", "e.mc"); });
  CHECK(msg.find("e.mc:2:7:") == 0);
}

TEST_CASE("duplicate procedure names are rejected") {
  CHECK(error_kind_of([] { parse_program("int f() { return 0; }\nint f() { return 1; }"); }) ==
        ErrorKind::Syntax);
}

TEST_CASE("declarations, prototypes and NULL") {
  Program p = parse_program(
      "struct dev;\n"
      "int helper(int a);\n"
      "static int counter;\n"
      "int f(struct dev *d, unsigned long n) {\n"
      "  struct dev *p;\n"
      "  int r = 0;\n"
      "  if (p == NULL) return r;\n"
      "  return 1;\n"
      "}\n");
  REQUIRE(p.procedures.size() == 1);
  const auto& f = p.procedures[0];
  CHECK(f.params == std::vector<std::string>{"d", "n"});
  REQUIRE(f.body.size() == 3);
  CHECK(f.body[0].kind == Stmt::Kind::Assign);
  CHECK(f.body[0].target.var == "r");
  CHECK(*f.body[1].expr == Expr::cmp(CmpOp::Eq, Expr::var("p"), Expr::int_const(0)));
}

TEST_CASE("access paths keep selectors and render without the base") {
  Program p = parse_program("int f(struct s *o) { o->foo.bar = 1; return o->a->b; }");
  const auto& body = p.procedures[0].body;
  REQUIRE(body[0].target.path.has_value());
  CHECK(body[0].target.path->base == "o");
  CHECK(body[0].target.path->text() == "->foo.bar");
  CHECK(body[0].target.path->source() == "o->foo.bar");
  CHECK(body[1].expr->kind == Expr::Kind::PathRead);
  CHECK(body[1].expr->path.text() == "->a->b");

  auto parsed = parse_access_path("->x.y");
  REQUIRE(parsed);
  CHECK(parsed->base.empty());
  CHECK(parsed->steps.size() == 2);
  CHECK_FALSE(parse_access_path("o"));
}

TEST_CASE("for loops desugar to init plus while") {
  Program p = parse_program("int f() { for (i = 0; i < 4; i = next(i)) { work(i); } return 0; }");
  const auto& body = p.procedures[0].body;
  REQUIRE(body.size() == 3);
  CHECK(body[0].kind == Stmt::Kind::Assign);
  REQUIRE(body[1].kind == Stmt::Kind::While);
  REQUIRE(body[1].body.size() == 2);
  CHECK(body[1].body[1].kind == Stmt::Kind::Assign);
}

TEST_CASE("comparison operator helpers") {
  CHECK(negate(CmpOp::Lt) == CmpOp::Ge);
  CHECK(negate(CmpOp::Eq) == CmpOp::Ne);
  CHECK(mirror(CmpOp::Lt) == CmpOp::Gt);
  CHECK(mirror(CmpOp::Le) == CmpOp::Ge);
  CHECK(mirror(CmpOp::Eq) == CmpOp::Eq);
  CHECK(cmp_op_text(CmpOp::Ge) == ">=");
}

TEST_CASE("straight-line body lowers to one block without assumes") {
  Cfg cfg = lower_to_cfg(parse_program("int f() { a(); b(); return 0; }").procedures[0]);
  CHECK(cfg.blocks.size() == 1);
  CHECK(cfg.assume_edge_count() == 0);
  CHECK(cfg.count_paths() == 1);
}

TEST_CASE("if/else lowers to two assume edges of opposite polarity") {
  Cfg cfg = lower_to_cfg(parse_program("int f() { if (g()) { a(); } else { b(); } return 0; }").procedures[0]);
  CHECK(cfg.assume_edge_count() == 2);
  const auto& succs = cfg.blocks[cfg.entry].succs;
  REQUIRE(succs.size() == 2);
  CHECK(succs[0].polarity);
  CHECK_FALSE(succs[1].polarity);
  CHECK(cfg.count_paths() == 2);
}

TEST_CASE("a while loop has exactly the zero- and one-iteration paths") {
  Cfg cfg = lower_to_cfg(parse_program("int f() { while (more()) { step(); } return 0; }").procedures[0]);
  CHECK(cfg.count_paths() == 2);
  CHECK_FALSE(cfg.topological_order().empty());
}

TEST_CASE("short-circuit conditions lower to nested branches") {
  auto proc = parse_program("int f() { if (a() && b()) { x(); } return 0; }").procedures[0];
  CHECK(lower_to_cfg(proc).count_paths() == 3);
  proc = parse_program("int f() { if (a() || b() || c()) { x(); } return 0; }").procedures[0];
  CHECK(lower_to_cfg(proc).count_paths() == 4);
}

TEST_CASE("missing returns are appended and dead code is dropped") {
  Cfg cfg = lower_to_cfg(parse_program("int f() { a(); }").procedures[0]);
  REQUIRE(cfg.blocks.size() == 1);
  CHECK(cfg.blocks[0].returns());
  cfg = lower_to_cfg(parse_program("int f() { return 1; dead(); }").procedures[0]);
  CHECK(cfg.blocks[0].stmts.size() == 1);
}

TEST_CASE("fixture programs lower to acyclic graphs whose paths all return") {
  for (const char* name : {"golden.mc", "sents.mc"}) {
    Program p = parse_program(testutil::slurp(testutil::fixture(name)), name);
    for (const auto& proc : p.procedures) {
      Cfg cfg = lower_to_cfg(proc);
      INFO(proc.name);
      CHECK(cfg.topological_order().size() == cfg.blocks.size());
      for (const auto& b : cfg.blocks) {
        if (b.succs.empty()) CHECK(b.returns());
      }
    }
  }
}

TEST_CASE("print then parse is the identity on fixtures") {
  for (const char* name : {"golden.mc", "sents.mc"}) {
    Program p = parse_program(testutil::slurp(testutil::fixture(name)), name);
    std::string printed = print_program(p);
    Program again = parse_program(printed, name);
    CHECK(again == p);
    CHECK(print_program(again) == printed);
  }
}

TEST_CASE("print then parse is the identity on random programs") {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    testutil::ProgramGen gen(seed);
    std::string src = gen.program(3);
    Program p = parse_program(src);
    Program again = parse_program(print_program(p));
    INFO(src);
    REQUIRE(again == p);
    for (const auto& proc : p.procedures) CHECK_FALSE(lower_to_cfg(proc).topological_order().empty());
  }
}

TEST_CASE("integer literals") {
  auto ret = [](const std::string& lit) {
    return *parse_program("int f() { return " + lit + "; }").procedures[0].body[0].expr;
  };
  CHECK(ret("0x1f") == Expr::int_const(31));
  CHECK(ret("10UL") == Expr::int_const(10));
  CHECK(error_kind_of([] { parse_program("int f() { return 99999999999999999999; }"); }) == ErrorKind::Syntax);
  CHECK(error_kind_of([] { parse_program("int f() { return 12ab; }"); }) == ErrorKind::Syntax);
}
