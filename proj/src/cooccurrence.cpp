#include <algorithm>
#include <limits>
#include <thread>
#include <tuple>
#include <unordered_map>

#include "symvec/embedding.hpp"
#include "symvec/error.hpp"

namespace symvec {

namespace {

using u128 = unsigned __int128;

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

u128 lcm_upto(std::size_t n) {
  u128 l = 1;
  for (std::size_t k = 2; k <= n; ++k) l = l / gcd128(l, k) * k;
  return l;
}

std::uint64_t key_of(std::uint32_t i, std::uint32_t j) {
  return (static_cast<std::uint64_t>(i) << 32) | j;
}

using Shard = std::unordered_map<std::uint64_t, u128>;

void add_weight(Shard& shard, std::uint64_t key, u128 w) {
  u128& s = shard[key];
  if (s > std::numeric_limits<u128>::max() - w)
    throw Error(ErrorKind::Numeric, "co-occurrence weight overflow");
  s += w;
}

// Upper triangle only; the diagonal gets both directions at once.
void accumulate(const Corpus& corpus, const Vocabulary& vocab, std::size_t window,
                const std::vector<u128>& unit, std::size_t begin, std::size_t end, Shard& shard) {
  std::vector<std::uint32_t> ids;
  for (std::size_t s = begin; s < end; ++s) {
    const Sentence& sent = corpus.sentences[s];
    ids.clear();
    for (const auto& w : sent) ids.push_back(vocab.id(w));
    for (std::size_t p = 0; p < ids.size(); ++p) {
      if (ids[p] == Vocabulary::npos) continue;
      std::size_t last = std::min(ids.size(), p + window + 1);
      for (std::size_t q = p + 1; q < last; ++q) {
        if (ids[q] == Vocabulary::npos) continue;
        std::uint32_t a = std::min(ids[p], ids[q]);
        std::uint32_t b = std::max(ids[p], ids[q]);
        u128 w = unit[q - p];
        add_weight(shard, key_of(a, b), a == b ? 2 * w : w);
      }
    }
  }
}

}  // namespace

double CooccurrenceMatrix::at(std::uint32_t i, std::uint32_t j) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), std::make_pair(i, j),
                             [](const CoEntry& e, const std::pair<std::uint32_t, std::uint32_t>& k) {
                               return std::tie(e.i, e.j) < std::tie(k.first, k.second);
                             });
  if (it == entries.end() || it->i != i || it->j != j) return 0.0;
  return it->x;
}

CooccurrenceMatrix build_cooccurrence(const Corpus& corpus, const Vocabulary& vocab,
                                      std::size_t window, unsigned threads) {
  if (window < 1 || window > kMaxWindow)
    throw Error(ErrorKind::Config, "window must be in [1, " + std::to_string(kMaxWindow) + "]");
  const u128 denom = lcm_upto(window);
  std::vector<u128> unit(window + 1, 0);
  for (std::size_t d = 1; d <= window; ++d) unit[d] = denom / d;

  threads = std::max(1u, threads);
  std::size_t n = corpus.sentences.size();
  std::vector<Shard> shards(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  if (shards.size() == 1) {
    accumulate(corpus, vocab, window, unit, 0, n, shards[0]);
  } else {
    std::vector<std::exception_ptr> errors(shards.size());
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < shards.size(); ++t) {
      pool.emplace_back([&, t] {
        try {
          accumulate(corpus, vocab, window, unit, n * t / shards.size(), n * (t + 1) / shards.size(),
                     shards[t]);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
    for (std::size_t t = 1; t < shards.size(); ++t) {
      for (const auto& [k, v] : shards[t]) add_weight(shards[0], k, v);
      Shard().swap(shards[t]);
    }
  }

  CooccurrenceMatrix m;
  m.vocab_size = vocab.size();
  m.window = window;
  const double fdenom = static_cast<double>(denom);
  for (const auto& [k, s] : shards[0]) {
    auto i = static_cast<std::uint32_t>(k >> 32);
    auto j = static_cast<std::uint32_t>(k & 0xffffffffu);
    double x = static_cast<double>(s) / fdenom;
    m.entries.push_back({i, j, x});
    if (i != j) m.entries.push_back({j, i, x});
  }
  std::sort(m.entries.begin(), m.entries.end(),
            [](const CoEntry& a, const CoEntry& b) { return std::tie(a.i, a.j) < std::tie(b.i, b.j); });
  return m;
}

}  // namespace symvec
