#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "symvec/config.hpp"
#include "symvec/corpus.hpp"
#include "symvec/frontend.hpp"
#include "symvec/query.hpp"

namespace symvec {

struct AnalogyCategory {
  std::string type;
  std::string name;
  std::vector<std::pair<std::string, std::string>> pairs;
};

struct AnalogySuite {
  std::vector<AnalogyCategory> categories;  // first-appearance order

  /// Rows of `type\tcategory\twordA\twordB`; `#` comments and blank lines
  /// are skipped. Throws Error(Format) naming the row.
  static AnalogySuite read(std::istream& is, const std::string& name = "<suite>");
  static AnalogySuite load(const std::filesystem::path& path);
};

struct CategoryResult {
  std::string type;
  std::string name;
  std::size_t pairs = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t oov = 0;

  std::size_t total() const { return passed + failed + oov; }
};

struct EvalReport {
  std::vector<CategoryResult> categories;

  std::size_t passed() const;
  std::size_t failed() const;
  std::size_t oov() const;
  std::size_t total() const { return passed() + failed() + oov(); }
  /// passed / total; OOV tests count against it. 0 for an empty suite.
  double accuracy() const;
};

/// Every ordered pair of distinct pairs (A,B),(C,D) in a category is one
/// test, passing iff solve_analogy(A,B,C) == D. Any of the four words out of
/// vocabulary makes the test oov.
EvalReport evaluate_suite(const AnalogySuite& suite, const QueryIndex& index, unsigned threads = 1);

void write_report_tsv(std::ostream& os, const EvalReport& report);
void write_report_table(std::ostream& os, const EvalReport& report);

struct ErrorRecord {
  std::string label;
  std::vector<std::string> tokens;

  bool operator==(const ErrorRecord&) const = default;
};

inline constexpr std::size_t kMaxErrorTokens = 100;

/// Failing traces as (error code, preceding words). Sentences whose return
/// word after the last $ERR is $RET_PTR_ERR are dropped; a $ERR without a
/// following $RET_ word is skipped and reported through `warnings`.
std::vector<ErrorRecord> export_error_dataset(const Corpus& corpus,
                                              std::vector<std::string>* warnings = nullptr);
/// `label\ttokens` per record.
void write_error_dataset(std::ostream& os, const std::vector<ErrorRecord>& records);

struct AblationResult {
  std::string config_id;
  std::size_t sentences = 0;
  std::size_t vocab_size = 0;
  EvalReport report;
};

/// Regenerates the corpus under each named configuration, trains with the
/// shared parameters and evaluates the shared suite. `base` supplies the
/// constants, error table, path budget and stop words.
std::vector<AblationResult> run_ablation(const std::vector<Program>& programs,
                                         const std::vector<std::string>& config_ids,
                                         const PipelineConfig& base, const AnalogySuite& suite);

/// `config\tpassed\tfailed\toov\taccuracy` per configuration.
void write_ablation_tsv(std::ostream& os, const std::vector<AblationResult>& results);
void write_ablation_table(std::ostream& os, const std::vector<AblationResult>& results);

}  // namespace symvec
