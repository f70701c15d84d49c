#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "symvec/query.hpp"

using namespace symvec;

namespace {

Embedding hand_built(const std::vector<std::string>& words, const std::vector<std::vector<double>>& vecs) {
  Embedding e;
  e.vocab = Vocabulary::from_words(words);
  e.dim = vecs.front().size();
  for (const auto& v : vecs) e.w.insert(e.w.end(), v.begin(), v.end());
  e.wt.assign(e.w.size(), 0.0);
  e.b.assign(words.size(), 0.0);
  e.bt.assign(words.size(), 0.0);
  return e;
}

Embedding random_embedding(std::mt19937_64& rng, std::size_t n, std::size_t dim) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<std::string> words;
  std::vector<std::vector<double>> vecs;
  for (std::size_t i = 0; i < n; ++i) {
    words.push_back("w" + std::to_string(i));
    std::vector<double> v(dim);
    for (auto& x : v) x = u(rng);
    vecs.push_back(v);
  }
  return hand_built(words, vecs);
}

double plain_cos(const std::vector<double>& a, const std::vector<double>& b) {
  double dot = 0, na = 0, nb = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    dot += a[k] * b[k];
    na += a[k] * a[k];
    nb += b[k] * b[k];
  }
  if (na == 0 || nb == 0) return 0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

std::string brute_analogy(const Embedding& e, std::uint32_t a, std::uint32_t b, std::uint32_t c) {
  auto va = e.query_vector(a), vb = e.query_vector(b), vc = e.query_vector(c);
  double best = -std::numeric_limits<double>::infinity();
  std::string answer;
  for (std::uint32_t d = 0; d < e.size(); ++d) {
    if (d == a || d == b || d == c) continue;
    auto vd = e.query_vector(d);
    double s = plain_cos(vd, vb) - plain_cos(vd, va) + plain_cos(vd, vc);
    if (s > best) {
      best = s;
      answer = e.vocab.word(d);
    }
  }
  return answer;
}

}  // namespace

TEST_CASE("cosine examples") {
  std::vector<double> a{1, 2, 3}, b{4, 5, 6};
  CHECK(cosine_similarity(a, b) == doctest::Approx(0.974631846).epsilon(1e-9));
  CHECK(cosine_similarity(std::vector<double>{1, 0}, std::vector<double>{0, 1}) == 0.0);
  CHECK(cosine_similarity(a, a) == doctest::Approx(1.0));
}

TEST_CASE("cosine of zero vector is zero") {
  std::vector<double> z{0, 0, 0}, a{1, 2, 3};
  CHECK(cosine_similarity(z, a) == 0.0);
  CHECK(cosine_similarity(z, z) == 0.0);
}

TEST_CASE("cosine rejects mismatched sizes") {
  std::vector<double> a{1, 2}, b{1, 2, 3};
  CHECK(testutil::error_kind_of([&] { cosine_similarity(a, b); }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("subspace patterns") {
  auto all = Subspace::parse("*");
  CHECK(all.matches("anything"));
  auto err = Subspace::parse("$RET_E*");
  CHECK(err.matches("$RET_ENOMEM"));
  CHECK_FALSE(err.matches("$RET_0"));
  auto list = Subspace::parse("a,b");
  CHECK(list.matches("a"));
  CHECK(list.matches("b"));
  CHECK_FALSE(list.matches("c"));
}

TEST_CASE("nearest neighbor restricted to one word") {
  Embedding e = hand_built({"x", "y", "z"}, {{1, 0}, {0, 1}, {1, 1}});
  auto sub = Subspace::of_words({"y"});
  auto r = nearest_neighbors(e, e.query_vector("x"), 1, &sub);
  REQUIRE(r.size() == 1);
  CHECK(r[0].word == "y");
}

TEST_CASE("nearest neighbors in hand-ranked order") {
  Embedding e = hand_built({"p", "q", "r"}, {{1, 0.1}, {0.2, 1}, {1, 1}});
  std::vector<double> target{1, 0};
  auto r = nearest_neighbors(e, target, 3);
  REQUIRE(r.size() == 3);
  CHECK(r[0].word == "p");
  CHECK(r[1].word == "r");
  CHECK(r[2].word == "q");
  CHECK(r[0].similarity >= r[1].similarity);
}

TEST_CASE("ties rank by ascending id") {
  Embedding e = hand_built({"a", "b", "c"}, {{1, 0}, {2, 0}, {0, 1}});
  std::vector<double> target{1, 0};
  auto r = nearest_neighbors(e, target, 2);
  CHECK(r[0].word == "a");
  CHECK(r[1].word == "b");
}

TEST_CASE("empty candidate set is an error") {
  Embedding e = hand_built({"a", "b"}, {{1, 0}, {0, 1}});
  auto none = Subspace::prefix("zz");
  std::vector<double> target{1, 0};
  CHECK(testutil::error_kind_of([&] { nearest_neighbors(e, target, 1, &none); }) == ErrorKind::EmptyCandidates);
  CHECK(testutil::error_kind_of([&] { nearest_neighbors(e, target, 1, nullptr, {"a", "b"}); }) ==
        ErrorKind::EmptyCandidates);
}

TEST_CASE("k beyond the candidate count returns every candidate in order") {
  std::mt19937_64 rng(5);
  Embedding e = random_embedding(rng, 12, 4);
  std::vector<double> target{0.3, -0.2, 0.9, 0.1};
  auto r = nearest_neighbors(e, target, 100, nullptr, {"w3"});
  CHECK(r.size() == 11);
  for (std::size_t i = 1; i < r.size(); ++i) {
    bool ordered = r[i - 1].similarity > r[i].similarity ||
                   (r[i - 1].similarity == r[i].similarity && r[i - 1].id < r[i].id);
    CHECK(ordered);
  }
}

TEST_CASE("analogy with a single candidate") {
  Embedding e = hand_built({"A", "B", "C", "D"}, {{1, 0}, {0, 1}, {1, 1}, {-5, 3}});
  CHECK(solve_analogy(e, "A", "B", "C") == "D");
}

TEST_CASE("analogy on a hand-built six-word vocabulary") {
  Embedding e = hand_built({"man", "king", "woman", "queen", "apple", "car"},
                           {{1, 0, 0}, {1, 1, 0}, {0, 0, 1}, {0, 1, 1}, {0.5, -1, 0.2}, {-1, 0.1, -1}});
  CHECK(solve_analogy(e, "man", "king", "woman") == "queen");
  CHECK(solve_analogy(e, "man", "king", "woman") == brute_analogy(e, 0, 1, 2));
}

TEST_CASE("analogy with an unknown word") {
  Embedding e = hand_built({"A", "B", "C", "D"}, {{1, 0}, {0, 1}, {1, 1}, {-5, 3}});
  CHECK(testutil::error_kind_of([&] { solve_analogy(e, "Z", "B", "C"); }) == ErrorKind::OutOfVocabulary);
  CHECK(testutil::error_kind_of([&] { solve_analogy(e, "A", "B", "Z"); }) == ErrorKind::OutOfVocabulary);
}

TEST_CASE("analogy with no remaining candidate") {
  Embedding e = hand_built({"A", "B", "C"}, {{1, 0}, {0, 1}, {1, 1}});
  CHECK(testutil::error_kind_of([&] { solve_analogy(e, "A", "B", "C"); }) == ErrorKind::EmptyCandidates);
}

TEST_CASE("analogy agrees with brute force on random vocabularies") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 4 + rng() % 47;
    Embedding e = random_embedding(rng, n, 1 + rng() % 8);
    std::uint32_t a = rng() % n, b = rng() % n, c = rng() % n;
    auto got = solve_analogy(e, e.vocab.word(a), e.vocab.word(b), e.vocab.word(c));
    std::set<std::string> inputs{e.vocab.word(a), e.vocab.word(b), e.vocab.word(c)};
    CHECK(inputs.count(got) == 0);
    CHECK(got == brute_analogy(e, a, b, c));
  }
}

TEST_CASE("positive scaling leaves rankings and analogies unchanged") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 6 + rng() % 20;
    Embedding e = random_embedding(rng, n, 5);
    Embedding scaled = e;
    for (auto& x : scaled.w) x *= 8.0;
    auto target = e.query_vector(0);
    auto r1 = nearest_neighbors(e, target, n);
    auto r2 = nearest_neighbors(scaled, target, n);
    for (std::size_t i = 0; i < r1.size(); ++i) CHECK(r1[i].word == r2[i].word);
    CHECK(solve_analogy(e, "w1", "w2", "w3") == solve_analogy(scaled, "w1", "w2", "w3"));
  }
}

TEST_CASE("averaged query of one word is its nearest other word") {
  Embedding e = hand_built({"a", "b", "c"}, {{1, 0}, {0.9, 0.1}, {0, 1}});
  auto r = averaged_query(e, {"a"}, Subspace::all(), 1);
  REQUIRE(r.size() == 1);
  CHECK(r[0].word == "b");
}

TEST_CASE("a zero mean ranks by id") {
  Embedding e = hand_built({"v", "neg", "p", "q"}, {{1, 2}, {-1, -2}, {3, 1}, {-1, 4}});
  auto r = averaged_query(e, {"v", "neg"}, Subspace::all(), 2);
  REQUIRE(r.size() == 2);
  CHECK(r[0].word == "p");
  CHECK(r[0].similarity == 0.0);
  CHECK(r[1].word == "q");
}

TEST_CASE("averaged query against a planted subspace matches brute force") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    Embedding e = random_embedding(rng, 10, 4);
    std::vector<std::string> planted{"w2", "w5", "w6", "w9"};
    auto sub = Subspace::of_words(planted);
    auto r = averaged_query(e, {"w0", "w1"}, sub, 4);
    auto v0 = e.query_vector("w0"), v1 = e.query_vector("w1");
    std::vector<double> mean(4);
    for (int k = 0; k < 4; ++k) mean[k] = (v0[k] + v1[k]) / 2;
    std::vector<std::pair<double, std::string>> expected;
    for (const auto& w : planted) expected.push_back({-plain_cos(mean, e.query_vector(w)), w});
    std::sort(expected.begin(), expected.end());
    REQUIRE(r.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(r[i].word == expected[i].second);
      CHECK(r[i].similarity == doctest::Approx(-expected[i].first).epsilon(1e-12));
    }
  }
}

TEST_CASE("averaged query errors") {
  Embedding e = hand_built({"a", "b"}, {{1, 0}, {0, 1}});
  CHECK(testutil::error_kind_of([&] { averaged_query(e, {"zz"}, Subspace::all(), 1); }) ==
        ErrorKind::OutOfVocabulary);
  CHECK(testutil::error_kind_of([&] { averaged_query(e, {"a"}, Subspace::prefix("q"), 1); }) ==
        ErrorKind::EmptyCandidates);
}
