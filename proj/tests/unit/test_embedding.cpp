#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <map>

#include "doctest.h"
#include "helpers.hpp"
#include "symvec/embedding.hpp"

using namespace symvec;

namespace {

Corpus make(std::vector<Sentence> s) {
  Corpus c;
  c.sentences = std::move(s);
  return c;
}

Corpus random_corpus(std::mt19937_64& rng, std::size_t max_sentences, std::size_t max_words, std::size_t alphabet) {
  Corpus c;
  std::size_t n = 1 + rng() % max_sentences;
  for (std::size_t s = 0; s < n; ++s) {
    Sentence sent;
    for (std::size_t k = rng() % (max_words + 1); k > 0; --k) sent.push_back("w" + std::to_string(rng() % alphabet));
    c.sentences.push_back(sent);
  }
  return c;
}

// Exact rational sums of 1/d, converted with the same rounding rule as the
// library: numerator scaled to lcm(1..window), then one division in double.
std::map<std::pair<std::uint32_t, std::uint32_t>, double> oracle(const Corpus& c, const Vocabulary& v,
                                                                std::size_t window) {
  using boost::multiprecision::cpp_int;
  using boost::multiprecision::cpp_rational;
  std::map<std::pair<std::uint32_t, std::uint32_t>, cpp_rational> exact;
  for (const auto& s : c.sentences)
    for (std::size_t p = 0; p < s.size(); ++p)
      for (std::size_t q = 0; q < s.size(); ++q) {
        if (p == q) continue;
        std::size_t d = p > q ? p - q : q - p;
        if (d > window || !v.contains(s[p]) || !v.contains(s[q])) continue;
        exact[{v.id(s[p]), v.id(s[q])}] += cpp_rational(1, d);
      }
  cpp_int l = 1;
  for (std::size_t k = 2; k <= window; ++k) l = boost::multiprecision::lcm(l, cpp_int(k));
  std::map<std::pair<std::uint32_t, std::uint32_t>, double> out;
  for (const auto& [k, r] : exact) {
    cpp_int scaled = numerator(r) * (l / denominator(r));
    auto num = static_cast<unsigned __int128>(scaled);
    auto den = static_cast<unsigned __int128>(l);
    out[k] = static_cast<double>(num) / static_cast<double>(den);
  }
  return out;
}

TrainParams small_params(std::size_t dim) {
  TrainParams p;
  p.dim = dim;
  p.window = 5;
  p.iterations = 50;
  p.min_count = 0;
  p.seed = 3;
  return p;
}

CooccurrenceMatrix random_matrix(std::mt19937_64& rng, std::size_t n) {
  CooccurrenceMatrix m;
  m.vocab_size = n;
  m.window = 1;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i; j < n; ++j) {
      if (rng() % 4 == 0) continue;
      // Spread across both sides of x_max so both branches of f are exercised.
      double x = 0.2 + static_cast<double>(rng() % 2000) / 10.0;
      m.entries.push_back({i, j, x});
      if (i != j) m.entries.push_back({j, i, x});
    }
  std::sort(m.entries.begin(), m.entries.end(),
            [](const CoEntry& a, const CoEntry& b) { return std::tie(a.i, a.j) < std::tie(b.i, b.j); });
  return m;
}

std::vector<std::string> words(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("w" + std::to_string(i));
  return out;
}

}  // namespace

TEST_CASE("reciprocal distance weights") {
  Corpus c = make({{"a", "b", "c"}});
  Vocabulary v = Vocabulary::build(c, 0);
  auto x = build_cooccurrence(c, v, 2);
  auto a = v.id("a"), b = v.id("b"), cw = v.id("c");
  CHECK(x.at(a, b) == 1.0);
  CHECK(x.at(b, cw) == 1.0);
  CHECK(x.at(a, cw) == 0.5);
  CHECK(x.at(cw, a) == 0.5);
  CHECK(x.at(a, a) == 0.0);
  CHECK(x.entries.size() == 6);
}

TEST_CASE("a single word has no co-occurrences") {
  Corpus c = make({{"a"}});
  CHECK(build_cooccurrence(c, Vocabulary::build(c, 0), 5).empty());
}

TEST_CASE("a repeated word co-occurs with itself in both directions") {
  Corpus c = make({{"a", "a"}});
  auto x = build_cooccurrence(c, Vocabulary::build(c, 0), 1);
  REQUIRE(x.entries.size() == 1);
  CHECK(x.at(0, 0) == 2.0);
}

TEST_CASE("out-of-vocabulary words still take up distance") {
  Corpus c = make({{"a", "rare", "b"}, {"a", "b"}});
  Vocabulary v = Vocabulary::build(c, 2);
  REQUIRE_FALSE(v.contains("rare"));
  auto x = build_cooccurrence(c, v, 2);
  CHECK(x.at(v.id("a"), v.id("b")) == 1.5);
  CHECK(build_cooccurrence(c, v, 1).at(v.id("a"), v.id("b")) == 1.0);
}

TEST_CASE("window bounds") {
  Corpus c = make({{"a", "b"}});
  Vocabulary v = Vocabulary::build(c, 0);
  CHECK(testutil::error_kind_of([&] { build_cooccurrence(c, v, 0); }) == ErrorKind::Config);
  CHECK(testutil::error_kind_of([&] { build_cooccurrence(c, v, kMaxWindow + 1); }) == ErrorKind::Config);
  CHECK_FALSE(build_cooccurrence(c, v, kMaxWindow).empty());
}

TEST_CASE("co-occurrence equals the exact brute-force sum") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    Corpus c = random_corpus(rng, 20, 12, 8);
    c.sentences.push_back({"w0", "w0"});
    Vocabulary v = Vocabulary::build(c, rng() % 3 == 0 ? 2 : 0);
    std::size_t window = 1 + rng() % 12;
    auto x = build_cooccurrence(c, v, window);
    auto expected = oracle(c, v, window);
    REQUIRE(x.entries.size() == expected.size());
    for (const auto& e : x.entries) CHECK(e.x == expected.at({e.i, e.j}));
  }
}

TEST_CASE("co-occurrence is symmetric and independent of order and threads") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    Corpus c = random_corpus(rng, 40, 20, 10);
    if (c.word_count() == 0) continue;
    Vocabulary v = Vocabulary::build(c, 0);
    auto x = build_cooccurrence(c, v, 7);
    for (const auto& e : x.entries) CHECK(x.at(e.j, e.i) == e.x);
    Corpus shuffled = c;
    std::shuffle(shuffled.sentences.begin(), shuffled.sentences.end(), rng);
    CHECK(build_cooccurrence(shuffled, v, 7) == x);
    CHECK(build_cooccurrence(c, v, 7, 3) == x);
  }
}

TEST_CASE("analytic gradient matches central differences") {
  std::mt19937_64 rng(21);
  const double h = 1e-5;
  for (int trial = 0; trial < 5; ++trial) {
    auto x = random_matrix(rng, 3);
    TrainParams p = small_params(4);
    p.seed = trial + 1;
    Vocabulary v = Vocabulary::from_words(words(3));
    Embedding e = initialize_embedding(v, p);
    // Move away from the tiny initial values so every term matters.
    for (auto* arr : {&e.w, &e.wt, &e.b, &e.bt})
      for (auto& val : *arr) val = (static_cast<double>(rng() % 2001) - 1000.0) / 1000.0;
    auto g = glove_gradient(e, x, p);
    double worst = 0.0;
    auto probe = [&](std::vector<double>& param, const std::vector<double>& grad) {
      for (std::size_t k = 0; k < param.size(); ++k) {
        double saved = param[k];
        param[k] = saved + h;
        double up = glove_loss(e, x, p);
        param[k] = saved - h;
        double down = glove_loss(e, x, p);
        param[k] = saved;
        double fd = (up - down) / (2 * h);
        double rel = std::abs(fd - grad[k]) / std::max({std::abs(fd), std::abs(grad[k]), 1e-6});
        worst = std::max(worst, rel);
      }
    };
    probe(e.w, g.w);
    probe(e.wt, g.wt);
    probe(e.b, g.b);
    probe(e.bt, g.bt);
    CHECK(worst < 1e-4);
  }
}

TEST_CASE("training reduces the loss on a single constraint") {
  Corpus c = make({{"a", "b"}});
  Vocabulary v = Vocabulary::build(c, 0);
  auto x = build_cooccurrence(c, v, 1);
  TrainParams p = small_params(2);
  p.iterations = 200;
  Embedding init = initialize_embedding(v, p);
  double before = glove_loss(init, x, p);
  Embedding trained = train_embedding(x, v, p);
  CHECK(glove_loss(trained, x, p) < before);
}

TEST_CASE("final-pass loss is below the first on fixture corpora") {
  for (const char* name : {"golden.mc", "sents.mc"}) {
    Corpus c = testutil::corpus_of(testutil::slurp(testutil::fixture(name)));
    Vocabulary v = Vocabulary::build(c, 0);
    TrainParams p = small_params(8);
    auto x = build_cooccurrence(c, v, p.window);
    std::vector<double> losses;
    train_embedding(x, v, p, [&](std::size_t, double l) { losses.push_back(l); });
    REQUIRE(losses.size() == p.iterations);
    CHECK(losses.back() < losses.front());
  }
}

TEST_CASE("initialization stays inside the documented range") {
  Vocabulary v = Vocabulary::from_words(words(20));
  TrainParams p = small_params(10);
  Embedding e = initialize_embedding(v, p);
  for (auto* arr : {&e.w, &e.wt, &e.b, &e.bt})
    for (double val : *arr) {
      CHECK(val > -0.05);
      CHECK(val < 0.05);
    }
}

TEST_CASE("training is bit-identical for the same seed") {
  Corpus c = testutil::corpus_of(testutil::slurp(testutil::fixture("golden.mc")));
  Vocabulary v = Vocabulary::build(c, 0);
  TrainParams p = small_params(6);
  auto x = build_cooccurrence(c, v, p.window);
  Embedding a = train_embedding(x, v, p);
  Embedding b = train_embedding(x, v, p);
  CHECK(a.w == b.w);
  CHECK(a.wt == b.wt);
  CHECK(a.b == b.b);
  p.seed = 4;
  CHECK(train_embedding(x, v, p).w != a.w);
}

TEST_CASE("divergence is reported") {
  Corpus c = make({{"a", "b", "c", "a", "b"}});
  Vocabulary v = Vocabulary::build(c, 0);
  auto x = build_cooccurrence(c, v, 2);
  TrainParams p = small_params(2);
  p.learning_rate = 1e300;
  CHECK(testutil::error_kind_of([&] { train_embedding(x, v, p); }) == ErrorKind::Numeric);
}

TEST_CASE("parameter validation") {
  TrainParams p;
  p.alpha = 0.0;
  CHECK(testutil::error_kind_of([&] { p.validate(); }) == ErrorKind::Config);
  p = TrainParams{};
  p.dim = 0;
  CHECK(testutil::error_kind_of([&] { p.validate(); }) == ErrorKind::Config);
  p = TrainParams{};
  p.iterations = 0;
  CHECK(testutil::error_kind_of([&] { p.validate(); }) == ErrorKind::Config);
  CHECK_NOTHROW(TrainParams{}.validate());
}

TEST_CASE("vectors persist as one line per word") {
  testutil::TempDir dir;
  Corpus c = make({{"a", "b", "c", "a"}});
  Vocabulary v = Vocabulary::build(c, 0);
  TrainParams p = small_params(2);
  Embedding e = train_embedding(build_cooccurrence(c, v, 2), v, p);
  save_embedding(e, dir / "v.txt");
  std::istringstream text(testutil::slurp(dir / "v.txt"));
  std::string line;
  int lines = 0;
  while (std::getline(text, line)) {
    ++lines;
    CHECK(std::count(line.begin(), line.end(), ' ') == 2);
  }
  CHECK(lines == 3);

  Embedding back = load_embedding(dir / "v.txt");
  CHECK(back.vocab.words() == e.vocab.words());
  double worst = 0.0;
  for (std::uint32_t id = 0; id < e.size(); ++id) {
    auto q1 = e.query_vector(id), q2 = back.query_vector(id);
    for (std::size_t k = 0; k < q1.size(); ++k) worst = std::max(worst, std::abs(q1[k] - q2[k]));
  }
  CHECK(worst < 1e-9);
  CHECK(back.w == e.w);
  CHECK(back.wt == e.wt);
  CHECK(back.b == e.b);
}

TEST_CASE("the sidecar resumes training exactly") {
  testutil::TempDir dir;
  Corpus c = testutil::corpus_of(testutil::slurp(testutil::fixture("sents.mc")));
  Vocabulary v = Vocabulary::build(c, 0);
  TrainParams p = small_params(3);
  auto x = build_cooccurrence(c, v, p.window);
  p.iterations = 20;
  Embedding straight = train_embedding(x, v, p);
  p.iterations = 10;
  Embedding half = train_embedding(x, v, p);
  save_embedding(half, dir / "half.txt");
  Embedding resumed = load_embedding(dir / "half.txt");
  train_epochs(resumed, x, p);
  CHECK(resumed.w == straight.w);
  CHECK(resumed.bt == straight.bt);
}

TEST_CASE("without a sidecar the query vectors are still exact") {
  testutil::TempDir dir;
  {
    std::ofstream out(dir / "v.txt");
    out << "x 1 2\ny 0.5 -3e-2\n";
  }
  Embedding e = load_embedding(dir / "v.txt");
  CHECK(e.dim == 2);
  CHECK(e.query_vector("y") == std::vector<double>{0.5, -3e-2});
  CHECK(testutil::error_kind_of([&] { e.query_vector("z"); }) == ErrorKind::OutOfVocabulary);
}

TEST_CASE("malformed vector files") {
  testutil::TempDir dir;
  auto write = [&](const std::string& text) {
    std::ofstream out(dir / "bad.txt");
    out << text;
  };
  write("a 1 2\nb 1 2 3\n");
  auto msg = testutil::error_message_of([&] { load_embedding(dir / "bad.txt"); });
  CHECK(msg.find("bad.txt:2") != std::string::npos);
  CHECK(testutil::error_kind_of([&] { load_embedding(dir / "bad.txt"); }) == ErrorKind::DimensionMismatch);
  write("a 1 2\na 3 4\n");
  CHECK(testutil::error_kind_of([&] { load_embedding(dir / "bad.txt"); }) == ErrorKind::Format);
  write("a 1 x\n");
  CHECK(testutil::error_kind_of([&] { load_embedding(dir / "bad.txt"); }) == ErrorKind::Format);
  write("");
  CHECK(testutil::error_kind_of([&] { load_embedding(dir / "bad.txt"); }) == ErrorKind::Format);
  CHECK(testutil::error_kind_of([&] { load_embedding(dir / "missing.txt"); }) == ErrorKind::Io);
}
