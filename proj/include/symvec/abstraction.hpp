#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "symvec/symex.hpp"

namespace symvec {

enum class TokenKind {
  Called,
  ParamTo,
  ParamShare,
  RetCmp,
  AccessPathStore,
  AccessPathSensitive,
  RetError,
  RetConst,
  PropRet,
  Error,
  FunctionStart,
  FunctionEnd,
};

std::string_view token_kind_name(TokenKind kind);
std::optional<TokenKind> token_kind_from_name(std::string_view name);

/// Groups of token kinds that are switched on and off together.
enum class AbstractionClass { Dataflow, RetCmp, AccessPath, Returns, Error, Boundary };

std::string_view class_name(AbstractionClass cls);
std::optional<AbstractionClass> class_from_name(std::string_view name);
std::vector<TokenKind> class_tokens(AbstractionClass cls);
const std::vector<AbstractionClass>& all_classes();

struct AbstractToken {
  TokenKind kind = TokenKind::Called;
  /// Callee (Called, RetCmp, PropRet; the later callee of ParamTo/ParamShare),
  /// access-path text, or error-code name.
  std::string name;
  /// The earlier callee of ParamTo/ParamShare.
  std::string source;
  CmpOp op = CmpOp::Eq;
  std::int64_t constant = 0;

  bool operator==(const AbstractToken&) const = default;

  static AbstractToken called(std::string callee);
  static AbstractToken param_to(std::string later, std::string earlier);
  static AbstractToken param_share(std::string later, std::string earlier);
  static AbstractToken ret_cmp(CmpOp op, std::string callee, std::int64_t c);
  static AbstractToken path_store(std::string path_text);
  static AbstractToken path_sensitive(std::string path_text);
  static AbstractToken ret_error(std::string code);
  static AbstractToken ret_const(std::int64_t c);
  static AbstractToken prop_ret(std::string callee);
  static AbstractToken simple(TokenKind kind);  // Error, FunctionStart, FunctionEnd
};

/// Positive error numbers and their symbolic names (12 -> ENOMEM).
class ErrorTable {
 public:
  static constexpr const char* kPtrErr = "PTR_ERR";

  ErrorTable() = default;
  /// Standard Linux codes 1-34.
  static ErrorTable defaults();
  /// Two-column TSV: number, name. `#` comments and blank lines allowed.
  static ErrorTable load(const std::filesystem::path& path);

  void add(std::int64_t code, const std::string& name);
  std::optional<std::string> name_of(std::int64_t code) const;
  bool has_name(const std::string& name) const { return by_name_.count(name) != 0; }
  const std::map<std::int64_t, std::string>& entries() const { return by_code_; }

  bool operator==(const ErrorTable& o) const { return by_code_ == o.by_code_; }

 private:
  std::map<std::int64_t, std::string> by_code_;
  std::map<std::string, std::int64_t> by_name_;
};

const std::set<std::int64_t>& default_constants();
const std::set<std::string>& default_stop_words();

struct AbstractionConfig {
  std::string id = "baseline";
  std::set<TokenKind> enabled;  // Called is implicit
  std::set<std::int64_t> constants = default_constants();
  ErrorTable err_codes = ErrorTable::defaults();
  std::size_t path_budget = kDefaultPathBudget;
  /// Exact callee names, or prefixes when the entry ends in `*`.
  std::set<std::string> stop_words = default_stop_words();

  /// Every class enabled.
  static AbstractionConfig baseline();

  bool enabled_kind(TokenKind kind) const { return kind == TokenKind::Called || enabled.count(kind); }
  void enable(AbstractionClass cls);
  void disable(AbstractionClass cls);
  bool is_stop_word(const std::string& callee) const;
};

/// Named configurations: baseline, no-dataflow, no-retcmp, no-accesspath,
/// no-returns, no-error, no-boundary, stopwords-included, syntactic.
AbstractionConfig named_config(const std::string& id);
const std::vector<std::string>& ablation_config_ids();

/// Tokens for one event. Argument sharing with earlier calls is read from
/// CallEvent::shared_with, which the executor fills from its state.
std::vector<AbstractToken> abstract_event(const TraceEvent& ev, const AbstractionConfig& cfg);
std::vector<AbstractToken> abstract_trace(const Trace& trace, const AbstractionConfig& cfg);

}  // namespace symvec
