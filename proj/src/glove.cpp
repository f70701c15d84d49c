#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

#include "symvec/embedding.hpp"
#include "rng.hpp"
#include "symvec/error.hpp"

namespace symvec {

using detail::bounded;
using detail::unit_open;

namespace {

double weight_fn(double x, const TrainParams& p) {
  return x < p.x_max ? std::pow(x / p.x_max, p.alpha) : 1.0;
}

double residual(const Embedding& e, const CoEntry& c, double log_x) {
  const double* wi = e.w.data() + c.i * e.dim;
  const double* wj = e.wt.data() + c.j * e.dim;
  double dot = 0.0;
  for (std::size_t k = 0; k < e.dim; ++k) dot += wi[k] * wj[k];
  return dot + e.b[c.i] + e.bt[c.j] - log_x;
}

double residual(const Embedding& e, const CoEntry& c) { return residual(e, c, std::log(c.x)); }

// Per-entry weight and log target, fixed for a whole training run.
struct EntryCache {
  std::vector<double> f;
  std::vector<double> log_x;

  EntryCache(const CooccurrenceMatrix& x, const TrainParams& p) {
    f.reserve(x.entries.size());
    log_x.reserve(x.entries.size());
    for (const auto& c : x.entries) {
      f.push_back(weight_fn(c.x, p));
      log_x.push_back(std::log(c.x));
    }
  }
};

void check_matrix(const CooccurrenceMatrix& x, const Embedding& e) {
  if (x.empty()) throw Error(ErrorKind::InvalidArgument, "co-occurrence matrix is empty");
  if (x.vocab_size != e.size())
    throw Error(ErrorKind::DimensionMismatch, "co-occurrence matrix and embedding vocabularies differ");
}

// One pass over `order[begin, end)`; returns the loss seen before each update.
double run_slice(Embedding& e, const CooccurrenceMatrix& x, const EntryCache& cache, const TrainParams& p,
                 const std::vector<std::size_t>& order, std::size_t begin, std::size_t end) {
  const std::size_t dim = e.dim;
  std::vector<double> gi(dim), gj(dim);
  double loss = 0.0;
  for (std::size_t n = begin; n < end; ++n) {
    const std::size_t idx = order[n];
    const CoEntry& c = x.entries[idx];
    double diff = residual(e, c, cache.log_x[idx]);
    double f = cache.f[idx];
    loss += f * diff * diff;
    double g = 2.0 * f * diff;
    double* wi = e.w.data() + c.i * dim;
    double* wj = e.wt.data() + c.j * dim;
    double* gwi = e.gw.data() + c.i * dim;
    double* gwj = e.gwt.data() + c.j * dim;
    for (std::size_t k = 0; k < dim; ++k) {
      gi[k] = g * wj[k];
      gj[k] = g * wi[k];
    }
    for (std::size_t k = 0; k < dim; ++k) {
      wi[k] -= p.learning_rate * gi[k] / std::sqrt(gwi[k]);
      wj[k] -= p.learning_rate * gj[k] / std::sqrt(gwj[k]);
      gwi[k] += gi[k] * gi[k];
      gwj[k] += gj[k] * gj[k];
    }
    e.b[c.i] -= p.learning_rate * g / std::sqrt(e.gb[c.i]);
    e.bt[c.j] -= p.learning_rate * g / std::sqrt(e.gbt[c.j]);
    e.gb[c.i] += g * g;
    e.gbt[c.j] += g * g;
  }
  return loss;
}

}  // namespace

void TrainParams::validate() const {
  if (dim < 1) throw Error(ErrorKind::Config, "dim must be >= 1");
  if (iterations < 1) throw Error(ErrorKind::Config, "iterations must be >= 1");
  if (window < 1 || window > kMaxWindow)
    throw Error(ErrorKind::Config, "window must be in [1, " + std::to_string(kMaxWindow) + "]");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw Error(ErrorKind::Config, "alpha must be in (0, 1]");
  if (!(x_max > 0.0)) throw Error(ErrorKind::Config, "x_max must be > 0");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate))
    throw Error(ErrorKind::Config, "learning rate must be > 0");
  if (threads < 1) throw Error(ErrorKind::Config, "threads must be >= 1");
}

std::vector<double> Embedding::query_vector(std::uint32_t id) const {
  std::vector<double> q(dim);
  for (std::size_t k = 0; k < dim; ++k) q[k] = w[id * dim + k] + wt[id * dim + k];
  return q;
}

std::vector<double> Embedding::query_vector(const std::string& word) const {
  auto id = vocab.id(word);
  if (id == Vocabulary::npos) throw Error(ErrorKind::OutOfVocabulary, "'" + word + "' is not in the vocabulary");
  return query_vector(id);
}

Embedding initialize_embedding(const Vocabulary& vocab, const TrainParams& params) {
  params.validate();
  Embedding e;
  e.vocab = vocab;
  e.dim = params.dim;
  const std::size_t n = vocab.size();
  const double scale = 1.0 / static_cast<double>(params.dim);
  std::mt19937_64 rng(params.seed);
  auto draw = [&] { return (unit_open(rng) - 0.5) * scale; };
  e.w.resize(n * params.dim);
  e.wt.resize(n * params.dim);
  e.b.resize(n);
  e.bt.resize(n);
  for (auto& v : e.w) v = draw();
  for (auto& v : e.wt) v = draw();
  for (auto& v : e.b) v = draw();
  for (auto& v : e.bt) v = draw();
  e.gw.assign(e.w.size(), 1.0);
  e.gwt.assign(e.wt.size(), 1.0);
  e.gb.assign(n, 1.0);
  e.gbt.assign(n, 1.0);
  return e;
}

double glove_loss(const Embedding& e, const CooccurrenceMatrix& x, const TrainParams& params) {
  check_matrix(x, e);
  double loss = 0.0;
  for (const auto& c : x.entries) {
    double diff = residual(e, c);
    loss += weight_fn(c.x, params) * diff * diff;
  }
  return loss;
}

GloveGradient glove_gradient(const Embedding& e, const CooccurrenceMatrix& x, const TrainParams& params) {
  check_matrix(x, e);
  GloveGradient g;
  g.w.assign(e.w.size(), 0.0);
  g.wt.assign(e.wt.size(), 0.0);
  g.b.assign(e.b.size(), 0.0);
  g.bt.assign(e.bt.size(), 0.0);
  for (const auto& c : x.entries) {
    double s = 2.0 * weight_fn(c.x, params) * residual(e, c);
    for (std::size_t k = 0; k < e.dim; ++k) {
      g.w[c.i * e.dim + k] += s * e.wt[c.j * e.dim + k];
      g.wt[c.j * e.dim + k] += s * e.w[c.i * e.dim + k];
    }
    g.b[c.i] += s;
    g.bt[c.j] += s;
  }
  return g;
}

void train_epochs(Embedding& e, const CooccurrenceMatrix& x, const TrainParams& params,
                  const TrainObserver& observer) {
  params.validate();
  check_matrix(x, e);
  if (e.dim != params.dim)
    throw Error(ErrorKind::DimensionMismatch, "embedding has dim " + std::to_string(e.dim) +
                                                  ", parameters ask for " + std::to_string(params.dim));
  const std::size_t m = x.entries.size();
  const EntryCache cache(x, params);
  std::vector<std::size_t> order(m);
  const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(params.threads, m));
  for (std::size_t it = 0; it < params.iterations; ++it) {
    for (std::size_t k = 0; k < m; ++k) order[k] = k;
    std::mt19937_64 rng(params.seed ^ (0x9E3779B97F4A7C15ull * (e.epochs + 1)));
    for (std::size_t k = m; k > 1; --k) std::swap(order[k - 1], order[bounded(rng, k)]);

    double loss = 0.0;
    if (threads <= 1) {
      loss = run_slice(e, x, cache, params, order, 0, m);
    } else {
      std::vector<double> partial(threads, 0.0);
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
          partial[t] = run_slice(e, x, cache, params, order, m * t / threads, m * (t + 1) / threads);
        });
      }
      for (auto& th : pool) th.join();
      for (double l : partial) loss += l;
    }
    ++e.epochs;
    if (!std::isfinite(loss))
      throw Error(ErrorKind::Numeric, "training diverged: non-finite loss at iteration " +
                                          std::to_string(it + 1) + "; lower the learning rate");
    if (observer) observer(it, loss);
  }
}

Embedding train_embedding(const CooccurrenceMatrix& x, const Vocabulary& vocab,
                          const TrainParams& params, const TrainObserver& observer) {
  Embedding e = initialize_embedding(vocab, params);
  train_epochs(e, x, params, observer);
  return e;
}

}  // namespace symvec
