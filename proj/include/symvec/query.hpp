#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "symvec/embedding.hpp"

namespace symvec {

/// a.b / (|a||b|), or 0 when either norm is 0. Throws DimensionMismatch.
double cosine_similarity(std::span<const double> a, std::span<const double> b);

/// Word filter: an explicit list, a `prefix*` pattern, or `*` for everything.
class Subspace {
 public:
  static Subspace all();
  static Subspace of_words(std::vector<std::string> words);
  static Subspace prefix(std::string prefix);
  /// "*", "pre*", or a comma-separated word list.
  static Subspace parse(const std::string& spec);

  bool matches(const std::string& word) const;
  std::string describe() const;

 private:
  enum class Kind { All, Words, Prefix };
  Kind kind_ = Kind::All;
  std::set<std::string> words_;
  std::string prefix_;
};

struct Neighbor {
  std::string word;
  std::uint32_t id = 0;
  double similarity = 0.0;
};

/// Query vectors with cached norms; read-only and safe to share across threads.
class QueryIndex {
 public:
  explicit QueryIndex(const Embedding& e);

  const Vocabulary& vocab() const { return vocab_; }
  std::size_t dim() const { return dim_; }
  std::size_t size() const { return vocab_.size(); }
  std::span<const double> vector(std::uint32_t id) const { return {vecs_.data() + id * dim_, dim_}; }
  /// Throws OutOfVocabulary.
  std::uint32_t require(const std::string& word) const;
  double cosine(std::uint32_t a, std::uint32_t b) const;
  double cosine_to(std::span<const double> target, double target_norm, std::uint32_t id) const;

  /// Top k by descending similarity, ties by ascending id. Candidates are the
  /// vocabulary words matching `sub` (all when null) minus `exclude`. Throws
  /// EmptyCandidates when nothing is left.
  std::vector<Neighbor> nearest(std::span<const double> target, std::size_t k, const Subspace* sub,
                                const std::set<std::uint32_t>& exclude) const;
  /// argmax over d not in {A,B,C} of cos(d,B) - cos(d,A) + cos(d,C), ties by id.
  std::string analogy(const std::string& a, const std::string& b, const std::string& c) const;
  /// Mean of the words' vectors against `sub`, excluding the words themselves.
  std::vector<Neighbor> averaged(const std::vector<std::string>& words, const Subspace& sub,
                                 std::size_t k) const;

 private:
  Vocabulary vocab_;
  std::size_t dim_ = 0;
  std::vector<double> vecs_;
  std::vector<double> norms_;
};

std::vector<Neighbor> nearest_neighbors(const Embedding& e, std::span<const double> target, std::size_t k,
                                        const Subspace* sub = nullptr,
                                        const std::set<std::string>& exclude = {});
std::string solve_analogy(const Embedding& e, const std::string& a, const std::string& b,
                          const std::string& c);
std::vector<Neighbor> averaged_query(const Embedding& e, const std::vector<std::string>& words,
                                     const Subspace& sub, std::size_t k);

}  // namespace symvec
