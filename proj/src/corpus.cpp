#include "symvec/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <nlohmann/json.hpp>
#include <ostream>

#include "symvec/error.hpp"

namespace symvec {

std::size_t Corpus::word_count() const {
  std::size_t n = 0;
  for (const auto& s : sentences) n += s.size();
  return n;
}

void write_corpus(std::ostream& os, const Corpus& corpus) {
  for (const auto& s : corpus.sentences) os << join_sentence(s) << '\n';
}

Corpus read_corpus(std::istream& is) {
  Corpus corpus;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    Sentence s;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      if (i < line.size() && static_cast<unsigned char>(line[i]) < 0x20) {
        throw Error(ErrorKind::Format, "corpus line " + std::to_string(lineno) +
                                           ": control character (only single spaces may separate words)");
      }
      if (i == line.size() || line[i] == ' ') {
        if (i == start) {
          if (line.empty()) break;
          throw Error(ErrorKind::Format,
                      "corpus line " + std::to_string(lineno) + ": empty word (stray space)");
        }
        s.push_back(line.substr(start, i - start));
        start = i + 1;
      }
    }
    corpus.sentences.push_back(std::move(s));
  }
  if (is.bad()) throw Error(ErrorKind::Io, "read error");
  return corpus;
}

void write_file_atomically(const std::filesystem::path& path,
                           const std::function<void(std::ostream&)>& writer) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  try {
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
      writer(out);
      out.flush();
      if (!out) throw Error(ErrorKind::Io, "write failed for " + path.string());
    }
    std::filesystem::rename(tmp, path);
  } catch (...) {
    std::error_code ec;
    std::filesystem::remove(tmp, ec);
    throw;
  }
}

namespace {

std::filesystem::path meta_path(const std::filesystem::path& path) {
  auto p = path;
  p += ".meta.json";
  return p;
}

}  // namespace

void save_corpus(const Corpus& corpus, const std::filesystem::path& path) {
  write_file_atomically(path, [&](std::ostream& os) { write_corpus(os, corpus); });
  nlohmann::json meta = {{"config", corpus.provenance.config_id},
                         {"sources", corpus.provenance.sources}};
  write_file_atomically(meta_path(path), [&](std::ostream& os) { os << meta.dump(2) << '\n'; });
}

Corpus load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open corpus " + path.string());
  Corpus corpus;
  try {
    corpus = read_corpus(in);
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
  std::ifstream meta_in(meta_path(path));
  if (meta_in) {
    try {
      auto meta = nlohmann::json::parse(meta_in);
      corpus.provenance.config_id = meta.value("config", "");
      corpus.provenance.sources = meta.value("sources", std::vector<std::string>{});
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::Format, meta_path(path).string() + ": " + e.what());
    }
  }
  return corpus;
}

Vocabulary Vocabulary::build(const Corpus& corpus, std::uint64_t min_count) {
  std::unordered_map<std::string, std::uint64_t> counts;
  for (const auto& s : corpus.sentences)
    for (const auto& w : s) ++counts[w];
  std::vector<std::pair<std::string, std::uint64_t>> kept;
  Vocabulary v;
  v.min_count_ = min_count;
  for (auto& [w, c] : counts) {
    if (c >= min_count) {
      kept.emplace_back(w, c);
    } else {
      v.filtered_occurrences_ += c;
    }
  }
  if (kept.empty()) {
    throw Error(ErrorKind::EmptyVocabulary,
                "empty vocabulary: no word occurs at least " + std::to_string(min_count) + " times");
  }
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  for (auto& [w, c] : kept) {
    v.index_.emplace(w, static_cast<std::uint32_t>(v.words_.size()));
    v.words_.push_back(w);
    v.counts_.push_back(c);
  }
  return v;
}

Vocabulary Vocabulary::from_words(const std::vector<std::string>& words) {
  Vocabulary v;
  for (const auto& w : words) {
    if (!v.index_.emplace(w, static_cast<std::uint32_t>(v.words_.size())).second)
      throw Error(ErrorKind::Format, "duplicate word '" + w + "'");
    v.words_.push_back(w);
    v.counts_.push_back(0);
  }
  return v;
}

std::uint32_t Vocabulary::id(const std::string& word) const {
  auto it = index_.find(word);
  return it == index_.end() ? npos : it->second;
}

void Vocabulary::write_tsv(std::ostream& os) const {
  for (std::size_t i = 0; i < words_.size(); ++i) os << words_[i] << '\t' << counts_[i] << '\n';
}

}  // namespace symvec
