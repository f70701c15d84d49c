#pragma once

#include <filesystem>
#include <set>
#include <string>

#include "symvec/abstraction.hpp"
#include "symvec/embedding.hpp"

namespace symvec {

/// One identifier per line; `#` comments and blank lines are skipped.
std::set<std::string> load_stop_words(const std::filesystem::path& path);

/// Settings shared by the pipeline stages. Files hold `key = value` lines and
/// are applied top to bottom, so `abstraction = <id>` should come first.
/// Command-line flags are applied after the file and win.
struct PipelineConfig {
  AbstractionConfig abstraction = AbstractionConfig::baseline();
  TrainParams train;
  unsigned threads = 1;

  /// Relative paths in values resolve against `base_dir`. Throws Error(Config).
  void set(const std::string& key, const std::string& value,
           const std::filesystem::path& base_dir = {});
  static PipelineConfig load(const std::filesystem::path& path);
};

}  // namespace symvec
