#include "symvec/frontend.hpp"

#include <cctype>
#include <charconv>
#include <set>
#include <sstream>
#include <unordered_set>

#include "symvec/error.hpp"

namespace symvec {

std::string_view cmp_op_text(CmpOp op) {
  switch (op) {
    case CmpOp::Eq: return "==";
    case CmpOp::Ne: return "!=";
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Gt: return ">";
    case CmpOp::Ge: return ">=";
  }
  return "?";
}

CmpOp negate(CmpOp op) {
  switch (op) {
    case CmpOp::Eq: return CmpOp::Ne;
    case CmpOp::Ne: return CmpOp::Eq;
    case CmpOp::Lt: return CmpOp::Ge;
    case CmpOp::Le: return CmpOp::Gt;
    case CmpOp::Gt: return CmpOp::Le;
    case CmpOp::Ge: return CmpOp::Lt;
  }
  return op;
}

CmpOp mirror(CmpOp op) {
  switch (op) {
    case CmpOp::Lt: return CmpOp::Gt;
    case CmpOp::Le: return CmpOp::Ge;
    case CmpOp::Gt: return CmpOp::Lt;
    case CmpOp::Ge: return CmpOp::Le;
    default: return op;
  }
}

std::string AccessPath::text() const {
  std::string out;
  for (const auto& step : steps) {
    out += step.selector == Selector::Arrow ? "->" : ".";
    out += step.field;
  }
  return out;
}

std::string AccessPath::source() const { return base + text(); }

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

}  // namespace

std::optional<AccessPath> parse_access_path(std::string_view text) {
  AccessPath path;
  std::size_t i = 0;
  while (i < text.size() && is_ident_char(text[i])) ++i;
  path.base = std::string(text.substr(0, i));
  while (i < text.size()) {
    PathStep step;
    if (text.substr(i, 2) == "->") {
      step.selector = Selector::Arrow;
      i += 2;
    } else if (text[i] == '.') {
      step.selector = Selector::Dot;
      i += 1;
    } else {
      return std::nullopt;
    }
    std::size_t start = i;
    if (i >= text.size() || !is_ident_start(text[i])) return std::nullopt;
    while (i < text.size() && is_ident_char(text[i])) ++i;
    step.field = std::string(text.substr(start, i - start));
    path.steps.push_back(std::move(step));
  }
  if (path.steps.empty()) return std::nullopt;
  return path;
}

Expr Expr::int_const(std::int64_t v) {
  Expr e;
  e.kind = Kind::IntConst;
  e.value = v;
  return e;
}

Expr Expr::var(std::string name) {
  Expr e;
  e.kind = Kind::Var;
  e.name = std::move(name);
  return e;
}

Expr Expr::call(std::string callee, std::vector<Expr> args) {
  Expr e;
  e.kind = Kind::Call;
  e.name = std::move(callee);
  e.operands = std::move(args);
  return e;
}

Expr Expr::path_read(AccessPath path) {
  Expr e;
  e.kind = Kind::PathRead;
  e.path = std::move(path);
  return e;
}

Expr Expr::neg(Expr inner) {
  Expr e;
  e.kind = Kind::Neg;
  e.operands.push_back(std::move(inner));
  return e;
}

Expr Expr::cmp(CmpOp op, Expr lhs, Expr rhs) {
  Expr e;
  e.kind = Kind::Cmp;
  e.op = op;
  e.operands.push_back(std::move(lhs));
  e.operands.push_back(std::move(rhs));
  return e;
}

Expr Expr::logical_and(Expr lhs, Expr rhs) {
  Expr e;
  e.kind = Kind::And;
  e.operands.push_back(std::move(lhs));
  e.operands.push_back(std::move(rhs));
  return e;
}

Expr Expr::logical_or(Expr lhs, Expr rhs) {
  Expr e;
  e.kind = Kind::Or;
  e.operands.push_back(std::move(lhs));
  e.operands.push_back(std::move(rhs));
  return e;
}

Expr Expr::logical_not(Expr inner) {
  Expr e;
  e.kind = Kind::Not;
  e.operands.push_back(std::move(inner));
  return e;
}

// ---------------------------------------------------------------------------
// Lexer

namespace {

struct Token {
  enum class Kind { Ident, Int, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  std::int64_t value = 0;
  int line = 1;
  int col = 1;
};

const std::unordered_set<std::string> kTypeWords = {
    "int",    "long",   "short",  "char",     "void",     "unsigned", "signed", "bool",
    "_Bool",  "float",  "double", "const",    "static",   "inline",   "extern", "volatile",
    "register"};

const std::unordered_set<std::string> kTagWords = {"struct", "union", "enum"};

const std::unordered_set<std::string> kReserved = {"if", "else", "while", "for", "return", "NULL"};

class Lexer {
 public:
  Lexer(std::string_view src, const std::string& name) : src_(src), name_(name) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space_and_comments();
      Token tok;
      tok.line = line_;
      tok.col = col_;
      if (pos_ >= src_.size()) {
        tok.kind = Token::Kind::End;
        out.push_back(tok);
        return out;
      }
      char c = src_[pos_];
      if (is_ident_start(c)) {
        std::size_t start = pos_;
        while (pos_ < src_.size() && is_ident_char(src_[pos_])) advance();
        tok.kind = Token::Kind::Ident;
        tok.text = std::string(src_.substr(start, pos_ - start));
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        lex_int(tok);
      } else {
        lex_punct(tok);
      }
      out.push_back(std::move(tok));
    }
  }

 private:
  [[noreturn]] void fail(int line, int col, const std::string& msg) const {
    std::ostringstream os;
    os << name_ << ":" << line << ":" << col << ": " << msg;
    throw Error(ErrorKind::Syntax, os.str());
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space_and_comments() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (src_.substr(pos_, 2) == "//") {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (src_.substr(pos_, 2) == "/*") {
        int line = line_, col = col_;
        advance();
        advance();
        while (pos_ < src_.size() && src_.substr(pos_, 2) != "*/") advance();
        if (pos_ >= src_.size()) fail(line, col, "unterminated comment");
        advance();
        advance();
      } else {
        return;
      }
    }
  }

  void lex_int(Token& tok) {
    int base = 10;
    if (src_.substr(pos_, 2) == "0x" || src_.substr(pos_, 2) == "0X") {
      base = 16;
      advance();
      advance();
    }
    std::size_t start = pos_;
    auto is_digit = [base](char c) {
      return base == 16 ? std::isxdigit(static_cast<unsigned char>(c)) != 0
                        : std::isdigit(static_cast<unsigned char>(c)) != 0;
    };
    while (pos_ < src_.size() && is_digit(src_[pos_])) advance();
    std::string_view digits = src_.substr(start, pos_ - start);
    // Integer suffixes carry no meaning here.
    while (pos_ < src_.size() && std::string_view("uUlL").find(src_[pos_]) != std::string_view::npos)
      advance();
    if (digits.empty() || (pos_ < src_.size() && is_ident_char(src_[pos_])))
      fail(tok.line, tok.col, "invalid integer literal");
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), tok.value, base);
    if (ec != std::errc()) fail(tok.line, tok.col, "integer literal out of range");
    tok.kind = Token::Kind::Int;
    tok.text = std::string(digits);
  }

  void lex_punct(Token& tok) {
    static const char* kTwo[] = {"==", "!=", "<=", ">=", "&&", "||", "->"};
    for (const char* p : kTwo) {
      if (src_.substr(pos_, 2) == p) {
        tok.kind = Token::Kind::Punct;
        tok.text = p;
        advance();
        advance();
        return;
      }
    }
    static const std::string kOne = "(){};,=<>!-.*";
    char c = src_[pos_];
    if (kOne.find(c) == std::string::npos) {
      fail(tok.line, tok.col, std::string("unexpected character '") + c + "'");
    }
    tok.kind = Token::Kind::Punct;
    tok.text = std::string(1, c);
    advance();
  }

  std::string_view src_;
  const std::string& name_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  Parser(std::vector<Token> toks, std::string name) : toks_(std::move(toks)), name_(std::move(name)) {}

  Program run() {
    Program prog;
    prog.source_name = name_;
    std::set<std::string> seen;
    while (!at_end()) {
      const Token& start = peek();
      auto proc = parse_toplevel();
      if (!proc) continue;
      if (!seen.insert(proc->name).second) {
        fail(start, "duplicate procedure '" + proc->name + "'");
      }
      prog.procedures.push_back(std::move(*proc));
    }
    return prog;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }
  bool at_end() const { return peek().kind == Token::Kind::End; }
  bool is_punct(std::string_view p, std::size_t ahead = 0) const {
    return peek(ahead).kind == Token::Kind::Punct && peek(ahead).text == p;
  }
  bool is_word(std::string_view w, std::size_t ahead = 0) const {
    return peek(ahead).kind == Token::Kind::Ident && peek(ahead).text == w;
  }
  bool is_plain_ident(std::size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return t.kind == Token::Kind::Ident && !kReserved.count(t.text) && !kTypeWords.count(t.text) &&
           !kTagWords.count(t.text);
  }

  [[noreturn]] void fail(const Token& at, const std::string& msg) const {
    std::ostringstream os;
    os << name_ << ":" << at.line << ":" << at.col << ": " << msg;
    throw Error(ErrorKind::Syntax, os.str());
  }

  static std::string describe(const Token& t) {
    if (t.kind == Token::Kind::End) return "end of input";
    return "'" + t.text + "'";
  }

  void expect(std::string_view p) {
    if (!is_punct(p)) fail(peek(), "expected '" + std::string(p) + "' but found " + describe(peek()));
    ++pos_;
  }

  std::string expect_ident() {
    if (!is_plain_ident()) fail(peek(), "expected identifier but found " + describe(peek()));
    return toks_[pos_++].text;
  }

  // Type words, tagged types, a typedef name, then pointer stars.
  bool parse_decl_spec() {
    bool any = false;
    for (;;) {
      if (peek().kind == Token::Kind::Ident && kTypeWords.count(peek().text)) {
        ++pos_;
        any = true;
      } else if (peek().kind == Token::Kind::Ident && kTagWords.count(peek().text)) {
        ++pos_;
        expect_ident();
        any = true;
      } else if (!any && is_plain_ident() && (is_plain_ident(1) || is_punct("*", 1))) {
        ++pos_;
        any = true;
      } else {
        break;
      }
    }
    if (!any) return false;
    while (is_punct("*")) ++pos_;
    return true;
  }

  bool is_declaration_start() const {
    const Token& t = peek();
    if (t.kind != Token::Kind::Ident) return false;
    if (kTypeWords.count(t.text) || kTagWords.count(t.text)) return true;
    return is_plain_ident() && (is_plain_ident(1) || is_punct("*", 1));
  }

  std::optional<Procedure> parse_toplevel() {
    if (!parse_decl_spec()) fail(peek(), "expected declaration but found " + describe(peek()));
    if (is_punct(";")) {
      ++pos_;
      return std::nullopt;  // tag declaration
    }
    Procedure proc;
    proc.name = expect_ident();
    if (!is_punct("(")) {
      // Global declaration; parsed and dropped.
      std::vector<Stmt> sink;
      finish_declarators(proc.name, sink);
      return std::nullopt;
    }
    expect("(");
    if (is_word("void") && is_punct(")", 1)) ++pos_;
    if (!is_punct(")")) {
      for (;;) {
        if (!parse_decl_spec()) fail(peek(), "expected parameter type but found " + describe(peek()));
        proc.params.push_back(expect_ident());
        if (is_punct(",")) {
          ++pos_;
          continue;
        }
        break;
      }
    }
    expect(")");
    if (is_punct(";")) {
      ++pos_;
      return std::nullopt;  // prototype
    }
    if (!is_punct("{")) fail(peek(), "expected '{' but found " + describe(peek()));
    parse_stmt(proc.body);
    return proc;
  }

  // After the first declarator name: [= expr] {, *name [= expr]} ;
  void finish_declarators(std::string first, std::vector<Stmt>& out) {
    std::string name = std::move(first);
    for (;;) {
      if (is_punct("=")) {
        ++pos_;
        Stmt s;
        s.kind = Stmt::Kind::Assign;
        s.target.var = name;
        s.expr = parse_expr();
        out.push_back(std::move(s));
      }
      if (is_punct(",")) {
        ++pos_;
        while (is_punct("*")) ++pos_;
        name = expect_ident();
        continue;
      }
      break;
    }
    expect(";");
  }

  void parse_declaration(std::vector<Stmt>& out) {
    parse_decl_spec();
    std::string name = expect_ident();
    finish_declarators(std::move(name), out);
  }

  // Assignment or expression; no trailing ';'.
  Stmt parse_simple() {
    Expr lhs = parse_expr();
    Stmt s;
    if (is_punct("=")) {
      const Token& at = peek();
      ++pos_;
      s.kind = Stmt::Kind::Assign;
      if (lhs.kind == Expr::Kind::Var) {
        s.target.var = lhs.name;
      } else if (lhs.kind == Expr::Kind::PathRead) {
        s.target.path = lhs.path;
      } else {
        fail(at, "left side of assignment must be a variable or access path");
      }
      s.expr = parse_expr();
      return s;
    }
    s.kind = Stmt::Kind::ExprStmt;
    s.expr = std::move(lhs);
    return s;
  }

  Expr parse_paren_cond() {
    expect("(");
    Expr e = parse_expr();
    expect(")");
    return e;
  }

  void parse_stmt(std::vector<Stmt>& out) {
    if (is_punct("{")) {
      ++pos_;
      while (!is_punct("}")) {
        if (at_end()) fail(peek(), "expected '}' but found end of input");
        parse_stmt(out);
      }
      ++pos_;
      return;
    }
    if (is_punct(";")) {
      ++pos_;
      return;
    }
    if (is_word("if")) {
      ++pos_;
      Stmt s;
      s.kind = Stmt::Kind::If;
      s.expr = parse_paren_cond();
      parse_stmt(s.body);
      if (is_word("else")) {
        ++pos_;
        parse_stmt(s.orelse);
      }
      out.push_back(std::move(s));
      return;
    }
    if (is_word("while")) {
      ++pos_;
      Stmt s;
      s.kind = Stmt::Kind::While;
      s.expr = parse_paren_cond();
      parse_stmt(s.body);
      out.push_back(std::move(s));
      return;
    }
    if (is_word("for")) {
      ++pos_;
      parse_for(out);
      return;
    }
    if (is_word("return")) {
      ++pos_;
      Stmt s;
      s.kind = Stmt::Kind::Return;
      if (!is_punct(";")) s.expr = parse_expr();
      expect(";");
      out.push_back(std::move(s));
      return;
    }
    if (is_word("else")) fail(peek(), "'else' without 'if'");
    if (is_declaration_start()) {
      parse_declaration(out);
      return;
    }
    out.push_back(parse_simple());
    expect(";");
  }

  // for (init; cond; step) body  ==>  init; while (cond) { body; step }
  void parse_for(std::vector<Stmt>& out) {
    expect("(");
    if (is_punct(";")) {
      ++pos_;
    } else if (is_declaration_start()) {
      parse_declaration(out);
    } else {
      out.push_back(parse_simple());
      expect(";");
    }
    Stmt loop;
    loop.kind = Stmt::Kind::While;
    loop.expr = is_punct(";") ? Expr::int_const(1) : parse_expr();
    expect(";");
    std::optional<Stmt> step;
    if (!is_punct(")")) step = parse_simple();
    expect(")");
    parse_stmt(loop.body);
    if (step) loop.body.push_back(std::move(*step));
    out.push_back(std::move(loop));
  }

  Expr parse_expr() { return parse_or(); }

  Expr parse_or() {
    Expr lhs = parse_and();
    while (is_punct("||")) {
      ++pos_;
      lhs = Expr::logical_or(std::move(lhs), parse_and());
    }
    return lhs;
  }

  Expr parse_and() {
    Expr lhs = parse_cmp();
    while (is_punct("&&")) {
      ++pos_;
      lhs = Expr::logical_and(std::move(lhs), parse_cmp());
    }
    return lhs;
  }

  std::optional<CmpOp> peek_cmp() const {
    if (peek().kind != Token::Kind::Punct) return std::nullopt;
    const std::string& t = peek().text;
    if (t == "==") return CmpOp::Eq;
    if (t == "!=") return CmpOp::Ne;
    if (t == "<") return CmpOp::Lt;
    if (t == "<=") return CmpOp::Le;
    if (t == ">") return CmpOp::Gt;
    if (t == ">=") return CmpOp::Ge;
    return std::nullopt;
  }

  Expr parse_cmp() {
    Expr lhs = parse_unary();
    if (auto op = peek_cmp()) {
      ++pos_;
      Expr rhs = parse_unary();
      if (peek_cmp()) fail(peek(), "chained comparison needs parentheses");
      return Expr::cmp(*op, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Expr parse_unary() {
    if (is_punct("!")) {
      ++pos_;
      return Expr::logical_not(parse_unary());
    }
    if (is_punct("-")) {
      ++pos_;
      return Expr::neg(parse_unary());
    }
    return parse_primary();
  }

  Expr parse_primary() {
    const Token& t = peek();
    if (t.kind == Token::Kind::Int) {
      ++pos_;
      return Expr::int_const(t.value);
    }
    if (is_word("NULL")) {
      ++pos_;
      return Expr::int_const(0);
    }
    if (is_punct("(")) {
      ++pos_;
      Expr e = parse_expr();
      expect(")");
      return e;
    }
    if (is_plain_ident()) {
      std::string name = toks_[pos_++].text;
      if (is_punct("(")) {
        ++pos_;
        std::vector<Expr> args;
        if (!is_punct(")")) {
          for (;;) {
            args.push_back(parse_expr());
            if (is_punct(",")) {
              ++pos_;
              continue;
            }
            break;
          }
        }
        expect(")");
        if (is_punct("->") || is_punct(".")) fail(peek(), "field access on a call result is not supported");
        return Expr::call(std::move(name), std::move(args));
      }
      if (is_punct("->") || is_punct(".")) {
        AccessPath path;
        path.base = std::move(name);
        while (is_punct("->") || is_punct(".")) {
          PathStep step;
          step.selector = is_punct("->") ? Selector::Arrow : Selector::Dot;
          ++pos_;
          step.field = expect_ident();
          path.steps.push_back(std::move(step));
        }
        return Expr::path_read(std::move(path));
      }
      return Expr::var(std::move(name));
    }
    fail(t, "expected expression but found " + describe(t));
  }

  std::vector<Token> toks_;
  std::string name_;
  std::size_t pos_ = 0;
};

}  // namespace

Program parse_program(std::string_view source, std::string source_name) {
  Lexer lexer(source, source_name);
  Parser parser(lexer.run(), source_name);
  return parser.run();
}

// ---------------------------------------------------------------------------
// Printer

namespace {

int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Or: return 1;
    case Expr::Kind::And: return 2;
    case Expr::Kind::Cmp: return 3;
    case Expr::Kind::Neg:
    case Expr::Kind::Not: return 4;
    default: return 5;
  }
}

void print_expr_into(std::ostream& os, const Expr& e, int min_prec);

void print_operand(std::ostream& os, const Expr& e, int min_prec) {
  if (precedence(e) < min_prec) {
    os << "(";
    print_expr_into(os, e, 0);
    os << ")";
  } else {
    print_expr_into(os, e, min_prec);
  }
}

void print_expr_into(std::ostream& os, const Expr& e, int min_prec) {
  switch (e.kind) {
    case Expr::Kind::IntConst: os << e.value; break;
    case Expr::Kind::Var: os << e.name; break;
    case Expr::Kind::PathRead: os << e.path.source(); break;
    case Expr::Kind::Call:
      os << e.name << "(";
      for (std::size_t i = 0; i < e.operands.size(); ++i) {
        if (i) os << ", ";
        print_expr_into(os, e.operands[i], 0);
      }
      os << ")";
      break;
    case Expr::Kind::Neg:
    case Expr::Kind::Not:
      os << (e.kind == Expr::Kind::Neg ? "-" : "!");
      // Unary operands are printed bare only when they are primaries.
      print_operand(os, e.operands[0], 5);
      break;
    case Expr::Kind::Cmp:
      print_operand(os, e.operands[0], 4);
      os << " " << cmp_op_text(e.op) << " ";
      print_operand(os, e.operands[1], 4);
      break;
    case Expr::Kind::And:
    case Expr::Kind::Or: {
      int p = precedence(e);
      print_operand(os, e.operands[0], p);
      os << (e.kind == Expr::Kind::And ? " && " : " || ");
      print_operand(os, e.operands[1], p + 1);
      break;
    }
  }
  (void)min_prec;
}

void print_block(std::ostream& os, const std::vector<Stmt>& body, int indent);

void print_stmt(std::ostream& os, const Stmt& s, int indent) {
  std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  switch (s.kind) {
    case Stmt::Kind::Assign:
      os << pad << (s.target.path ? s.target.path->source() : s.target.var) << " = ";
      print_expr_into(os, *s.expr, 0);
      os << ";\n";
      break;
    case Stmt::Kind::ExprStmt:
      os << pad;
      print_expr_into(os, *s.expr, 0);
      os << ";\n";
      break;
    case Stmt::Kind::Return:
      os << pad << "return";
      if (s.expr) {
        os << " ";
        print_expr_into(os, *s.expr, 0);
      }
      os << ";\n";
      break;
    case Stmt::Kind::If:
      os << pad << "if (";
      print_expr_into(os, *s.expr, 0);
      os << ") {\n";
      print_block(os, s.body, indent + 1);
      os << pad << "}";
      if (!s.orelse.empty()) {
        os << " else {\n";
        print_block(os, s.orelse, indent + 1);
        os << pad << "}";
      }
      os << "\n";
      break;
    case Stmt::Kind::While:
      os << pad << "while (";
      print_expr_into(os, *s.expr, 0);
      os << ") {\n";
      print_block(os, s.body, indent + 1);
      os << pad << "}\n";
      break;
  }
}

void print_block(std::ostream& os, const std::vector<Stmt>& body, int indent) {
  for (const auto& s : body) print_stmt(os, s, indent);
}

}  // namespace

std::string print_expr(const Expr& expr) {
  std::ostringstream os;
  print_expr_into(os, expr, 0);
  return os.str();
}

std::string print_program(const Program& program) {
  std::ostringstream os;
  for (std::size_t i = 0; i < program.procedures.size(); ++i) {
    const Procedure& p = program.procedures[i];
    if (i) os << "\n";
    os << "int " << p.name << "(";
    if (p.params.empty()) os << "void";
    for (std::size_t j = 0; j < p.params.size(); ++j) {
      if (j) os << ", ";
      os << "int " << p.params[j];
    }
    os << ") {\n";
    print_block(os, p.body, 1);
    os << "}\n";
  }
  return os.str();
}

}  // namespace symvec
