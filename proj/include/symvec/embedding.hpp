#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <vector>

#include "symvec/corpus.hpp"

namespace symvec {

/// Largest supported window. Weights are accumulated exactly as multiples of
/// 1/lcm(1..window), which must fit in 128 bits alongside the counts.
inline constexpr std::size_t kMaxWindow = 64;

struct CoEntry {
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  double x = 0.0;

  bool operator==(const CoEntry&) const = default;
};

/// Symmetric sparse co-occurrence weights, entries sorted by (i, j).
struct CooccurrenceMatrix {
  std::size_t vocab_size = 0;
  std::size_t window = 0;
  std::vector<CoEntry> entries;

  /// 0 when absent.
  double at(std::uint32_t i, std::uint32_t j) const;
  bool empty() const { return entries.empty(); }
  bool operator==(const CooccurrenceMatrix&) const = default;
};

/// Each in-vocabulary pair at distance d <= window adds 1/d to both X[i,j]
/// and X[j,i]. Out-of-vocabulary words still occupy positions. The sum is
/// exact and converted to double once, so the result does not depend on
/// sentence order or thread count.
CooccurrenceMatrix build_cooccurrence(const Corpus& corpus, const Vocabulary& vocab,
                                      std::size_t window, unsigned threads = 1);

struct TrainParams {
  std::size_t dim = 300;
  std::size_t window = 50;
  std::size_t iterations = 2000;
  double learning_rate = 0.05;
  double x_max = 100.0;
  double alpha = 0.75;
  std::uint64_t seed = 1;
  std::uint64_t min_count = 1000;
  /// 1 is deterministic; more threads apply lock-free interleaved updates.
  unsigned threads = 1;

  /// Throws Error(Config) on out-of-range values.
  void validate() const;
};

/// Main and context vectors plus biases, stored row-major by word id.
struct Embedding {
  Vocabulary vocab;
  std::size_t dim = 0;
  std::vector<double> w;
  std::vector<double> wt;
  std::vector<double> b;
  std::vector<double> bt;
  /// AdaGrad accumulators, same layout; start at 1.
  std::vector<double> gw, gwt, gb, gbt;
  /// Completed passes; seeds the shuffle of the next one.
  std::size_t epochs = 0;

  std::size_t size() const { return vocab.size(); }
  std::span<const double> main_vector(std::uint32_t id) const { return {w.data() + id * dim, dim}; }
  std::span<const double> context_vector(std::uint32_t id) const { return {wt.data() + id * dim, dim}; }
  /// w + w~ for the word.
  std::vector<double> query_vector(std::uint32_t id) const;
  std::vector<double> query_vector(const std::string& word) const;
};

/// Gradient of the loss, laid out like Embedding's parameter arrays.
struct GloveGradient {
  std::vector<double> w, wt, b, bt;
};

/// Uniform in (-0.5/dim, 0.5/dim) for vectors and biases, drawn from the seed.
Embedding initialize_embedding(const Vocabulary& vocab, const TrainParams& params);

/// J = sum over nonzero X[i,j] of f(X[i,j]) * (w_i.w~_j + b_i + b~_j - log X[i,j])^2.
double glove_loss(const Embedding& e, const CooccurrenceMatrix& x, const TrainParams& params);
GloveGradient glove_gradient(const Embedding& e, const CooccurrenceMatrix& x, const TrainParams& params);

/// Called after each iteration with (iteration, loss accumulated over that pass).
using TrainObserver = std::function<void(std::size_t, double)>;

/// AdaGrad over shuffled entries. Throws Error(Numeric) on a non-finite loss.
Embedding train_embedding(const CooccurrenceMatrix& x, const Vocabulary& vocab,
                          const TrainParams& params, const TrainObserver& observer = {});
/// Continues training an existing embedding in place.
void train_epochs(Embedding& e, const CooccurrenceMatrix& x, const TrainParams& params,
                  const TrainObserver& observer = {});

/// Text vectors (`word v1 .. vd`, query vectors) plus a `<path>.state`
/// sidecar holding the raw parameters and optimizer state.
void save_embedding(const Embedding& e, const std::filesystem::path& path);
/// Uses the sidecar when it matches the text file; otherwise the query
/// vectors become the main vectors and the rest is zero.
Embedding load_embedding(const std::filesystem::path& path);

}  // namespace symvec
