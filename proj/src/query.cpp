#include "symvec/query.hpp"

#include <algorithm>
#include <cmath>

#include "symvec/error.hpp"

namespace symvec {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

double ratio(double d, double na, double nb) {
  if (na == 0.0 || nb == 0.0) return 0.0;
  return d / (na * nb);
}

bool ranks_before(const Neighbor& x, const Neighbor& y) {
  if (x.similarity != y.similarity) return x.similarity > y.similarity;
  return x.id < y.id;
}

}  // namespace

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw Error(ErrorKind::DimensionMismatch, "cosine of vectors with dims " + std::to_string(a.size()) +
                                                  " and " + std::to_string(b.size()));
  return ratio(dot(a, b), std::sqrt(dot(a, a)), std::sqrt(dot(b, b)));
}

Subspace Subspace::all() { return {}; }

Subspace Subspace::of_words(std::vector<std::string> words) {
  Subspace s;
  s.kind_ = Kind::Words;
  s.words_.insert(words.begin(), words.end());
  return s;
}

Subspace Subspace::prefix(std::string prefix) {
  Subspace s;
  s.kind_ = Kind::Prefix;
  s.prefix_ = std::move(prefix);
  return s;
}

Subspace Subspace::parse(const std::string& spec) {
  if (spec.empty()) throw Error(ErrorKind::InvalidArgument, "empty subspace");
  if (spec == "*") return all();
  if (spec.back() == '*' && spec.find(',') == std::string::npos)
    return prefix(spec.substr(0, spec.size() - 1));
  std::vector<std::string> words;
  std::size_t start = 0;
  while (start <= spec.size()) {
    std::size_t comma = spec.find(',', start);
    if (comma == std::string::npos) comma = spec.size();
    if (comma > start) words.push_back(spec.substr(start, comma - start));
    start = comma + 1;
  }
  if (words.empty()) throw Error(ErrorKind::InvalidArgument, "empty subspace '" + spec + "'");
  return of_words(std::move(words));
}

bool Subspace::matches(const std::string& word) const {
  switch (kind_) {
    case Kind::All: return true;
    case Kind::Words: return words_.count(word) != 0;
    case Kind::Prefix: return word.compare(0, prefix_.size(), prefix_) == 0;
  }
  return false;
}

std::string Subspace::describe() const {
  switch (kind_) {
    case Kind::All: return "*";
    case Kind::Prefix: return prefix_ + "*";
    case Kind::Words: {
      std::string out;
      for (const auto& w : words_) out += (out.empty() ? "" : ",") + w;
      return out;
    }
  }
  return {};
}

QueryIndex::QueryIndex(const Embedding& e) : vocab_(e.vocab), dim_(e.dim) {
  vecs_.resize(e.size() * dim_);
  norms_.resize(e.size());
  for (std::uint32_t id = 0; id < e.size(); ++id) {
    auto q = e.query_vector(id);
    std::copy(q.begin(), q.end(), vecs_.begin() + id * dim_);
    norms_[id] = std::sqrt(dot(q, q));
  }
}

std::uint32_t QueryIndex::require(const std::string& word) const {
  auto id = vocab_.id(word);
  if (id == Vocabulary::npos)
    throw Error(ErrorKind::OutOfVocabulary, "'" + word + "' is not in the vocabulary");
  return id;
}

double QueryIndex::cosine(std::uint32_t a, std::uint32_t b) const {
  return ratio(dot(vector(a), vector(b)), norms_[a], norms_[b]);
}

double QueryIndex::cosine_to(std::span<const double> target, double target_norm, std::uint32_t id) const {
  return ratio(dot(target, vector(id)), target_norm, norms_[id]);
}

std::vector<Neighbor> QueryIndex::nearest(std::span<const double> target, std::size_t k, const Subspace* sub,
                                          const std::set<std::uint32_t>& exclude) const {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "k must be >= 1");
  if (target.size() != dim_)
    throw Error(ErrorKind::DimensionMismatch, "query of dim " + std::to_string(target.size()) +
                                                  " against vectors of dim " + std::to_string(dim_));
  const double tnorm = std::sqrt(dot(target, target));
  std::vector<Neighbor> cands;
  for (std::uint32_t id = 0; id < size(); ++id) {
    if (exclude.count(id) || (sub && !sub->matches(vocab_.word(id)))) continue;
    cands.push_back({vocab_.word(id), id, cosine_to(target, tnorm, id)});
  }
  if (cands.empty())
    throw Error(ErrorKind::EmptyCandidates,
                "no candidate words" + (sub ? " in subspace '" + sub->describe() + "'" : std::string()));
  std::size_t take = std::min(k, cands.size());
  std::partial_sort(cands.begin(), cands.begin() + take, cands.end(), ranks_before);
  cands.resize(take);
  return cands;
}

std::string QueryIndex::analogy(const std::string& a, const std::string& b, const std::string& c) const {
  const std::uint32_t ia = require(a), ib = require(b), ic = require(c);
  std::uint32_t best = Vocabulary::npos;
  double best_score = 0.0;
  for (std::uint32_t d = 0; d < size(); ++d) {
    if (d == ia || d == ib || d == ic) continue;
    double score = cosine(d, ib) - cosine(d, ia) + cosine(d, ic);
    if (best == Vocabulary::npos || score > best_score) {
      best = d;
      best_score = score;
    }
  }
  if (best == Vocabulary::npos)
    throw Error(ErrorKind::EmptyCandidates, "vocabulary has no word besides the analogy inputs");
  return vocab_.word(best);
}

std::vector<Neighbor> QueryIndex::averaged(const std::vector<std::string>& words, const Subspace& sub,
                                           std::size_t k) const {
  if (words.empty()) throw Error(ErrorKind::InvalidArgument, "averaged query needs at least one word");
  std::vector<double> mean(dim_, 0.0);
  std::set<std::uint32_t> exclude;
  for (const auto& w : words) {
    auto id = require(w);
    exclude.insert(id);
    auto v = vector(id);
    for (std::size_t k2 = 0; k2 < dim_; ++k2) mean[k2] += v[k2];
  }
  for (auto& m : mean) m /= static_cast<double>(words.size());
  return nearest(mean, k, &sub, exclude);
}

std::vector<Neighbor> nearest_neighbors(const Embedding& e, std::span<const double> target, std::size_t k,
                                        const Subspace* sub, const std::set<std::string>& exclude) {
  QueryIndex index(e);
  std::set<std::uint32_t> ids;
  for (const auto& w : exclude) {
    auto id = e.vocab.id(w);
    if (id != Vocabulary::npos) ids.insert(id);
  }
  return index.nearest(target, k, sub, ids);
}

std::string solve_analogy(const Embedding& e, const std::string& a, const std::string& b,
                          const std::string& c) {
  return QueryIndex(e).analogy(a, b, c);
}

std::vector<Neighbor> averaged_query(const Embedding& e, const std::vector<std::string>& words,
                                     const Subspace& sub, std::size_t k) {
  return QueryIndex(e).averaged(words, sub, k);
}

}  // namespace symvec
