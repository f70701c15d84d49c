#include "symvec/abstraction.hpp"

#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>

#include "symvec/error.hpp"

namespace symvec {

namespace {

struct KindName {
  TokenKind kind;
  std::string_view name;
};

constexpr KindName kKindNames[] = {
    {TokenKind::Called, "Called"},
    {TokenKind::ParamTo, "ParamTo"},
    {TokenKind::ParamShare, "ParamShare"},
    {TokenKind::RetCmp, "RetCmp"},
    {TokenKind::AccessPathStore, "AccessPathStore"},
    {TokenKind::AccessPathSensitive, "AccessPathSensitive"},
    {TokenKind::RetError, "RetError"},
    {TokenKind::RetConst, "RetConst"},
    {TokenKind::PropRet, "PropRet"},
    {TokenKind::Error, "Error"},
    {TokenKind::FunctionStart, "FunctionStart"},
    {TokenKind::FunctionEnd, "FunctionEnd"},
};

struct ClassName {
  AbstractionClass cls;
  std::string_view name;
};

constexpr ClassName kClassNames[] = {
    {AbstractionClass::Dataflow, "dataflow"},     {AbstractionClass::RetCmp, "retcmp"},
    {AbstractionClass::AccessPath, "accesspath"}, {AbstractionClass::Returns, "returns"},
    {AbstractionClass::Error, "error"},           {AbstractionClass::Boundary, "boundary"},
};

}  // namespace

std::string_view token_kind_name(TokenKind kind) {
  for (const auto& k : kKindNames)
    if (k.kind == kind) return k.name;
  return "?";
}

std::optional<TokenKind> token_kind_from_name(std::string_view name) {
  for (const auto& k : kKindNames)
    if (k.name == name) return k.kind;
  return std::nullopt;
}

std::string_view class_name(AbstractionClass cls) {
  for (const auto& c : kClassNames)
    if (c.cls == cls) return c.name;
  return "?";
}

std::optional<AbstractionClass> class_from_name(std::string_view name) {
  for (const auto& c : kClassNames)
    if (c.name == name) return c.cls;
  return std::nullopt;
}

std::vector<TokenKind> class_tokens(AbstractionClass cls) {
  switch (cls) {
    case AbstractionClass::Dataflow: return {TokenKind::ParamTo, TokenKind::ParamShare};
    case AbstractionClass::RetCmp: return {TokenKind::RetCmp};
    case AbstractionClass::AccessPath:
      return {TokenKind::AccessPathStore, TokenKind::AccessPathSensitive};
    case AbstractionClass::Returns:
      return {TokenKind::PropRet, TokenKind::RetError, TokenKind::RetConst};
    case AbstractionClass::Error: return {TokenKind::Error};
    case AbstractionClass::Boundary: return {TokenKind::FunctionStart, TokenKind::FunctionEnd};
  }
  return {};
}

const std::vector<AbstractionClass>& all_classes() {
  static const std::vector<AbstractionClass> classes = {
      AbstractionClass::Dataflow, AbstractionClass::RetCmp, AbstractionClass::AccessPath,
      AbstractionClass::Returns,  AbstractionClass::Error,  AbstractionClass::Boundary};
  return classes;
}

AbstractToken AbstractToken::called(std::string callee) {
  AbstractToken t;
  t.kind = TokenKind::Called;
  t.name = std::move(callee);
  return t;
}

AbstractToken AbstractToken::param_to(std::string later, std::string earlier) {
  AbstractToken t;
  t.kind = TokenKind::ParamTo;
  t.name = std::move(later);
  t.source = std::move(earlier);
  return t;
}

AbstractToken AbstractToken::param_share(std::string later, std::string earlier) {
  AbstractToken t = param_to(std::move(later), std::move(earlier));
  t.kind = TokenKind::ParamShare;
  return t;
}

AbstractToken AbstractToken::ret_cmp(CmpOp op, std::string callee, std::int64_t c) {
  AbstractToken t;
  t.kind = TokenKind::RetCmp;
  t.op = op;
  t.name = std::move(callee);
  t.constant = c;
  return t;
}

AbstractToken AbstractToken::path_store(std::string path_text) {
  AbstractToken t;
  t.kind = TokenKind::AccessPathStore;
  t.name = std::move(path_text);
  return t;
}

AbstractToken AbstractToken::path_sensitive(std::string path_text) {
  AbstractToken t;
  t.kind = TokenKind::AccessPathSensitive;
  t.name = std::move(path_text);
  return t;
}

AbstractToken AbstractToken::ret_error(std::string code) {
  AbstractToken t;
  t.kind = TokenKind::RetError;
  t.name = std::move(code);
  return t;
}

AbstractToken AbstractToken::ret_const(std::int64_t c) {
  AbstractToken t;
  t.kind = TokenKind::RetConst;
  t.constant = c;
  return t;
}

AbstractToken AbstractToken::prop_ret(std::string callee) {
  AbstractToken t;
  t.kind = TokenKind::PropRet;
  t.name = std::move(callee);
  return t;
}

AbstractToken AbstractToken::simple(TokenKind kind) {
  AbstractToken t;
  t.kind = kind;
  return t;
}

// ---------------------------------------------------------------------------
// Error table

ErrorTable ErrorTable::defaults() {
  static const char* kNames[] = {"EPERM",  "ENOENT",  "ESRCH",  "EINTR",  "EIO",    "ENXIO",
                                 "E2BIG",  "ENOEXEC", "EBADF",  "ECHILD", "EAGAIN", "ENOMEM",
                                 "EACCES", "EFAULT",  "ENOTBLK", "EBUSY", "EEXIST", "EXDEV",
                                 "ENODEV", "ENOTDIR", "EISDIR", "EINVAL", "ENFILE", "EMFILE",
                                 "ENOTTY", "ETXTBSY", "EFBIG",  "ENOSPC", "ESPIPE", "EROFS",
                                 "EMLINK", "EPIPE",   "EDOM",   "ERANGE"};
  ErrorTable table;
  std::int64_t code = 1;
  for (const char* name : kNames) table.add(code++, name);
  return table;
}

void ErrorTable::add(std::int64_t code, const std::string& name) {
  if (code <= 0) throw Error(ErrorKind::Config, "error code must be positive: " + std::to_string(code));
  if (name.empty() || name.find_first_of(" \t\r\n") != std::string::npos)
    throw Error(ErrorKind::Config, "bad error code name '" + name + "'");
  auto by_code = by_code_.find(code);
  auto by_name = by_name_.find(name);
  if ((by_code != by_code_.end() && by_code->second != name) ||
      (by_name != by_name_.end() && by_name->second != code)) {
    throw Error(ErrorKind::Config, "error table must be one-to-one: " + std::to_string(code) + " " + name);
  }
  by_code_[code] = name;
  by_name_[name] = code;
}

std::optional<std::string> ErrorTable::name_of(std::int64_t code) const {
  auto it = by_code_.find(code);
  if (it == by_code_.end()) return std::nullopt;
  return it->second;
}

ErrorTable ErrorTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open error table " + path.string());
  ErrorTable table;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string num, name, extra;
    fields >> num >> name;
    std::int64_t code = 0;
    auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), code);
    if (name.empty() || (fields >> extra) || ec != std::errc() || ptr != num.data() + num.size()) {
      throw Error(ErrorKind::Config,
                  path.string() + ":" + std::to_string(lineno) + ": expected '<number>\\t<name>'");
    }
    table.add(code, name);
  }
  return table;
}

const std::set<std::int64_t>& default_constants() {
  static const std::set<std::int64_t> kConstants = {-2, -1, 0, 1, 2, 3, 4, 8, 16, 32, 64};
  return kConstants;
}

const std::set<std::string>& default_stop_words() {
  static const std::set<std::string> kStop = {"__builtin_expect", "__compiletime_assert*"};
  return kStop;
}

// ---------------------------------------------------------------------------
// Configurations

AbstractionConfig AbstractionConfig::baseline() {
  AbstractionConfig cfg;
  for (AbstractionClass cls : all_classes()) cfg.enable(cls);
  return cfg;
}

void AbstractionConfig::enable(AbstractionClass cls) {
  for (TokenKind k : class_tokens(cls)) enabled.insert(k);
}

void AbstractionConfig::disable(AbstractionClass cls) {
  for (TokenKind k : class_tokens(cls)) enabled.erase(k);
}

bool AbstractionConfig::is_stop_word(const std::string& callee) const {
  if (stop_words.count(callee)) return true;
  for (const auto& w : stop_words) {
    if (!w.empty() && w.back() == '*' && callee.compare(0, w.size() - 1, w, 0, w.size() - 1) == 0)
      return true;
  }
  return false;
}

const std::vector<std::string>& ablation_config_ids() {
  static const std::vector<std::string> ids = {
      "baseline",   "no-dataflow", "no-retcmp",  "no-accesspath",    "no-returns",
      "no-error",   "no-boundary", "stopwords-included", "syntactic"};
  return ids;
}

AbstractionConfig named_config(const std::string& id) {
  AbstractionConfig cfg = AbstractionConfig::baseline();
  cfg.id = id;
  if (id == "baseline") return cfg;
  if (id == "stopwords-included") {
    cfg.stop_words.clear();
    return cfg;
  }
  if (id == "syntactic") {
    cfg.enabled = {TokenKind::FunctionStart, TokenKind::FunctionEnd, TokenKind::AccessPathStore};
    return cfg;
  }
  if (id.rfind("no-", 0) == 0) {
    if (auto cls = class_from_name(id.substr(3))) {
      cfg.disable(*cls);
      return cfg;
    }
  }
  throw Error(ErrorKind::Config, "unknown configuration '" + id + "'");
}

// ---------------------------------------------------------------------------
// Rules

std::vector<AbstractToken> abstract_event(const TraceEvent& ev, const AbstractionConfig& cfg) {
  std::vector<AbstractToken> out;
  if (const auto* call = std::get_if<CallEvent>(&ev)) {
    if (cfg.enabled_kind(TokenKind::ParamTo))
      for (const auto& src : call->nested_sources) out.push_back(AbstractToken::param_to(call->callee, src));
    if (cfg.enabled_kind(TokenKind::ParamShare))
      for (const auto& src : call->shared_with) out.push_back(AbstractToken::param_share(call->callee, src));
    out.push_back(AbstractToken::called(call->callee));
  } else if (const auto* as = std::get_if<AssumeEvent>(&ev)) {
    if (cfg.enabled_kind(TokenKind::RetCmp) && as->subject.kind == SymbolicValue::Kind::RetOf &&
        as->rhs.kind == SymbolicValue::Kind::Const && cfg.constants.count(as->rhs.value)) {
      out.push_back(AbstractToken::ret_cmp(as->op, as->subject.callee, as->rhs.value));
    }
    if (cfg.enabled_kind(TokenKind::AccessPathSensitive) && as->raw_path && !as->raw_path->steps.empty())
      out.push_back(AbstractToken::path_sensitive(as->raw_path->text()));
  } else if (const auto* st = std::get_if<StoreEvent>(&ev)) {
    if (cfg.enabled_kind(TokenKind::AccessPathStore)) out.push_back(AbstractToken::path_store(st->path.text()));
  } else if (const auto* ret = std::get_if<ReturnEvent>(&ev)) {
    if (!ret->value) return out;
    const SymbolicValue& v = *ret->value;
    if (v.kind == SymbolicValue::Kind::Const) {
      std::optional<std::string> code;
      if (v.value < 0 && v.value != std::numeric_limits<std::int64_t>::min())
        code = cfg.err_codes.name_of(-v.value);
      if (code) {
        if (cfg.enabled_kind(TokenKind::Error)) out.push_back(AbstractToken::simple(TokenKind::Error));
        if (cfg.enabled_kind(TokenKind::RetError)) out.push_back(AbstractToken::ret_error(*code));
      } else if (cfg.enabled_kind(TokenKind::RetConst)) {
        out.push_back(AbstractToken::ret_const(v.value));
      }
    } else if (v.kind == SymbolicValue::Kind::RetOf) {
      if (v.callee == ErrorTable::kPtrErr && cfg.enabled_kind(TokenKind::Error))
        out.push_back(AbstractToken::simple(TokenKind::Error));
      if (cfg.enabled_kind(TokenKind::PropRet)) out.push_back(AbstractToken::prop_ret(v.callee));
    }
  }
  return out;
}

std::vector<AbstractToken> abstract_trace(const Trace& trace, const AbstractionConfig& cfg) {
  std::vector<AbstractToken> out;
  if (cfg.enabled_kind(TokenKind::FunctionStart)) out.push_back(AbstractToken::simple(TokenKind::FunctionStart));
  for (const TraceEvent& ev : trace.events) {
    auto toks = abstract_event(ev, cfg);
    out.insert(out.end(), std::make_move_iterator(toks.begin()), std::make_move_iterator(toks.end()));
  }
  if (cfg.enabled_kind(TokenKind::FunctionEnd)) out.push_back(AbstractToken::simple(TokenKind::FunctionEnd));
  return out;
}

}  // namespace symvec
