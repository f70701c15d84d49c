#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "symvec/encoding.hpp"

namespace symvec {

struct Provenance {
  std::string config_id;
  std::vector<std::string> sources;

  bool operator==(const Provenance&) const = default;
};

/// Sentences in deterministic order: procedures in source order, traces in
/// enumeration order.
struct Corpus {
  std::vector<Sentence> sentences;
  Provenance provenance;

  std::size_t word_count() const;
  bool operator==(const Corpus&) const = default;
};

/// One sentence per line, words separated by single spaces.
void write_corpus(std::ostream& os, const Corpus& corpus);
Corpus read_corpus(std::istream& is);

/// Writes `path` atomically plus a `<path>.meta.json` provenance sidecar.
void save_corpus(const Corpus& corpus, const std::filesystem::path& path);
/// Reads `path`; provenance comes from the sidecar when present.
Corpus load_corpus(const std::filesystem::path& path);

class Vocabulary {
 public:
  static constexpr std::uint32_t npos = UINT32_MAX;

  /// Keeps words with count >= min_count. Ids are dense, by descending count,
  /// ties broken lexicographically. Throws EmptyVocabulary when nothing is kept.
  static Vocabulary build(const Corpus& corpus, std::uint64_t min_count);
  /// Builds directly from an id-ordered word list (used when loading vectors).
  static Vocabulary from_words(const std::vector<std::string>& words);

  std::size_t size() const { return words_.size(); }
  std::uint32_t id(const std::string& word) const;
  bool contains(const std::string& word) const { return id(word) != npos; }
  const std::string& word(std::uint32_t id) const { return words_.at(id); }
  std::uint64_t count(std::uint32_t id) const { return counts_.at(id); }
  const std::vector<std::string>& words() const { return words_; }
  std::uint64_t min_count() const { return min_count_; }
  /// Occurrences of words that fell below min_count.
  std::uint64_t filtered_occurrences() const { return filtered_occurrences_; }

  /// `word\tcount` per line in id order.
  void write_tsv(std::ostream& os) const;

 private:
  std::vector<std::string> words_;
  std::vector<std::uint64_t> counts_;
  std::unordered_map<std::string, std::uint32_t> index_;
  std::uint64_t min_count_ = 0;
  std::uint64_t filtered_occurrences_ = 0;
};

/// Writes through a temporary sibling and renames on success, so a failed
/// write never leaves a partial file behind.
void write_file_atomically(const std::filesystem::path& path,
                           const std::function<void(std::ostream&)>& writer);

}  // namespace symvec
