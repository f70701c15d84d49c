#include "symvec/encoding.hpp"

namespace symvec {

namespace {

const char* op_suffix(CmpOp op) {
  switch (op) {
    case CmpOp::Eq: return "_$EQ_";
    case CmpOp::Ne: return "_$NEQ_";
    case CmpOp::Lt: return "_$LT_";
    case CmpOp::Le: return "_$LTE_";
    case CmpOp::Gt: return "_$GT_";
    case CmpOp::Ge: return "_$GTE_";
  }
  return "_$?_";
}

}  // namespace

Word encode_token(const AbstractToken& tok) {
  switch (tok.kind) {
    case TokenKind::Called: return tok.name;
    case TokenKind::ParamTo:
    case TokenKind::ParamShare: return tok.source;
    case TokenKind::RetCmp: return tok.name + op_suffix(tok.op) + std::to_string(tok.constant);
    case TokenKind::PropRet: return "$RET_" + tok.name;
    case TokenKind::RetConst: return "$RET_" + std::to_string(tok.constant);
    case TokenKind::RetError: return "$RET_" + tok.name;
    case TokenKind::FunctionStart: return "$START";
    case TokenKind::FunctionEnd: return "$END";
    case TokenKind::Error: return "$ERR";
    case TokenKind::AccessPathStore: return "!" + tok.name;
    case TokenKind::AccessPathSensitive: return "?" + tok.name;
  }
  return {};
}

Sentence encode_trace(const std::vector<AbstractToken>& tokens, const AbstractionConfig& cfg) {
  Sentence out;
  out.reserve(tokens.size());
  for (const auto& tok : tokens) {
    Word w = encode_token(tok);
    bool call_derived = tok.kind == TokenKind::Called || tok.kind == TokenKind::ParamTo ||
                        tok.kind == TokenKind::ParamShare;
    if (call_derived && cfg.is_stop_word(w)) continue;
    out.push_back(std::move(w));
  }
  return out;
}

std::string join_sentence(const Sentence& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ' ';
    out += s[i];
  }
  return out;
}

}  // namespace symvec
