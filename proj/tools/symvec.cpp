// Command-line driver. Talks to the library only through the C interface.

#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "symvec/symvec.h"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

struct Failure {
  int code;
};

void check(sv_status st) {
  if (st == SV_OK) return;
  std::fprintf(stderr, "symvec: %s: %s\n", sv_status_name(st), sv_last_error());
  throw Failure{st == SV_ERR_INTERNAL ? kExitInternal : kExitInput};
}

std::vector<const char*> c_strs(const std::vector<std::string>& v) {
  std::vector<const char*> out;
  for (const auto& s : v) out.push_back(s.c_str());
  return out;
}

// Config file first, then every flag the user actually gave.
struct Settings {
  std::string config_path;
  std::optional<std::string> abstraction;
  std::optional<std::size_t> dim, window, iters, threads, path_budget;
  std::optional<std::uint64_t> seed, min_count;
  std::optional<double> lr, x_max, alpha;

  void add_config(CLI::App* app) {
    app->add_option("--config", config_path, "key = value configuration file")->check(CLI::ExistingFile);
    app->add_option("--threads", threads, "worker threads (1 is deterministic)")->check(CLI::PositiveNumber);
  }
  void add_abstraction(CLI::App* app) {
    app->add_option("--abstraction", abstraction, "named abstraction configuration");
    app->add_option("--path-budget", path_budget, "paths explored per procedure")->check(CLI::PositiveNumber);
  }
  void add_training(CLI::App* app) {
    app->add_option("--dim", dim, "vector dimension");
    app->add_option("--window", window, "symmetric co-occurrence window");
    app->add_option("--iters", iters, "training iterations");
    app->add_option("--seed", seed, "random seed");
    app->add_option("--min-count", min_count, "vocabulary minimum count");
    app->add_option("--lr", lr, "AdaGrad learning rate");
    app->add_option("--x-max", x_max, "weighting cutoff");
    app->add_option("--alpha", alpha, "weighting exponent");
  }

  sv_config* build(std::optional<std::uint64_t> default_min_count = std::nullopt) const {
    sv_config* cfg = nullptr;
    if (!config_path.empty()) {
      check(sv_config_load(config_path.c_str(), &cfg));
    } else {
      check(sv_config_new(nullptr, &cfg));
      if (default_min_count) set(cfg, "min_count", std::to_string(*default_min_count));
    }
    if (abstraction) set(cfg, "abstraction", *abstraction);
    if (path_budget) set(cfg, "path_budget", std::to_string(*path_budget));
    if (dim) set(cfg, "dim", std::to_string(*dim));
    if (window) set(cfg, "window", std::to_string(*window));
    if (iters) set(cfg, "iterations", std::to_string(*iters));
    if (seed) set(cfg, "seed", std::to_string(*seed));
    if (min_count) set(cfg, "min_count", std::to_string(*min_count));
    if (lr) set(cfg, "learning_rate", fmt(*lr));
    if (x_max) set(cfg, "x_max", fmt(*x_max));
    if (alpha) set(cfg, "alpha", fmt(*alpha));
    if (threads) set(cfg, "threads", std::to_string(*threads));
    return cfg;
  }

 private:
  static std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
  }
  static void set(sv_config* cfg, const std::string& key, const std::string& value) {
    sv_status st = sv_config_set(cfg, key.c_str(), value.c_str());
    if (st != SV_OK) {
      sv_config_free(cfg);
      check(st);
    }
  }
};

// Owns a handle and frees it on scope exit.
template <typename T, void (*Free)(T*)>
struct Handle {
  T* ptr = nullptr;
  Handle() = default;
  explicit Handle(T* p) : ptr(p) {}
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() {
    if (ptr) Free(ptr);
  }
  T** out() { return &ptr; }
  T* get() const { return ptr; }
};

using Config = Handle<sv_config, sv_config_free>;
using CorpusH = Handle<sv_corpus, sv_corpus_free>;
using EmbeddingH = Handle<sv_embedding, sv_embedding_free>;
using ResultsH = Handle<sv_results, sv_results_free>;
using ReportH = Handle<sv_report, sv_report_free>;
using AblationH = Handle<sv_ablation, sv_ablation_free>;

void print_results(const sv_results* r) {
  for (size_t i = 0; i < sv_results_count(r); ++i)
    std::printf("%s\t%.6f\n", sv_results_word(r, i), sv_results_score(r, i));
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t c = s.find(',', start);
    if (c == std::string::npos) c = s.size();
    if (c > start) out.push_back(s.substr(start, c - start));
    start = c + 1;
  }
  return out;
}

bool write_text(const std::string& path, const char* text) {
  std::string tmp = path + ".tmp";
  std::FILE* f = std::fopen(tmp.c_str(), "wb");
  if (!f) return false;
  bool ok = std::fputs(text, f) >= 0;
  ok = std::fclose(f) == 0 && ok;
  std::error_code ec;
  if (ok) std::filesystem::rename(tmp, path, ec);
  if (!ok || ec) {
    std::filesystem::remove(tmp, ec);
    return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symvec: symbolic traces to word embeddings of API usage"};
  app.require_subcommand(1);
  app.set_version_flag("--version", sv_version());

  Settings s;
  std::vector<std::string> sources;
  std::string input, output, vectors, suite, report, vocab_out, subspace = "*", configs;
  std::string word, a, b, c, words;
  std::size_t k = 10, procedures = 20000;
  std::uint64_t synth_seed = 7;

  auto* trace = app.add_subcommand("trace", "dump raw symbolic traces of C-subset sources");
  s.add_config(trace);
  s.add_abstraction(trace);
  trace->add_option("sources", sources, "source files or directories")->required();
  trace->add_option("-o,--output", output, "trace dump")->required();

  auto* encode = app.add_subcommand("encode", "abstract and encode a trace dump into a corpus");
  s.add_config(encode);
  s.add_abstraction(encode);
  encode->add_option("-i,--input", input, "trace dump")->required()->check(CLI::ExistingFile);
  encode->add_option("-o,--output", output, "corpus file")->required();

  auto* corpus = app.add_subcommand("corpus", "trace and encode sources in one step");
  s.add_config(corpus);
  s.add_abstraction(corpus);
  corpus->add_option("sources", sources, "source files or directories")->required();
  corpus->add_option("-o,--output", output, "corpus file")->required();

  auto* train = app.add_subcommand("train", "learn word vectors from a corpus");
  s.add_config(train);
  s.add_training(train);
  train->add_option("-i,--input", input, "corpus file")->required()->check(CLI::ExistingFile);
  train->add_option("-o,--output", output, "vectors file")->required();
  train->add_option("--vocab-out", vocab_out, "write the vocabulary as word<TAB>count");

  auto* query = app.add_subcommand("query", "similarity, analogy and averaged-vector queries");
  query->require_subcommand(1);
  auto* similar = query->add_subcommand("similar", "nearest neighbours of a word");
  similar->add_option("word", word)->required();
  similar->add_option("-k", k, "number of results")->check(CLI::PositiveNumber);
  similar->add_option("--subspace", subspace, "'*', 'prefix*' or comma-separated words");
  similar->add_option("--vectors", vectors)->required()->check(CLI::ExistingFile);
  auto* analogy = query->add_subcommand("analogy", "solve A : B :: C : ?");
  analogy->add_option("A", a)->required();
  analogy->add_option("B", b)->required();
  analogy->add_option("C", c)->required();
  analogy->add_option("--vectors", vectors)->required()->check(CLI::ExistingFile);
  auto* avg = query->add_subcommand("avg", "neighbours of the mean of several words");
  avg->add_option("words", words, "comma-separated words")->required();
  avg->add_option("-k", k, "number of results")->check(CLI::PositiveNumber);
  avg->add_option("--subspace", subspace, "'*', 'prefix*' or comma-separated words");
  avg->add_option("--vectors", vectors)->required()->check(CLI::ExistingFile);

  auto* bench = app.add_subcommand("bench", "evaluate vectors on an analogy suite");
  bench->add_option("--suite", suite)->required()->check(CLI::ExistingFile);
  bench->add_option("--vectors", vectors)->required()->check(CLI::ExistingFile);
  bench->add_option("--report", report, "also write the report as TSV");
  bench->add_option("--threads", s.threads)->check(CLI::PositiveNumber);

  auto* ablate = app.add_subcommand("ablate", "compare abstraction configurations on a suite");
  s.add_config(ablate);
  s.add_training(ablate);
  ablate->add_option("sources", sources, "source files or directories")->required();
  ablate->add_option("--suite", suite)->required()->check(CLI::ExistingFile);
  ablate->add_option("--configs", configs, "comma-separated configuration ids (default: all)");
  ablate->add_option("-o,--output", output, "write the comparison as TSV");

  auto* export_errors = app.add_subcommand("export-errors", "export failing traces labelled by error code");
  export_errors->add_option("-i,--input", input, "corpus file")->required()->check(CLI::ExistingFile);
  export_errors->add_option("-o,--output", output, "dataset TSV")->required();

  auto* synth = app.add_subcommand("synth", "write the synthetic benchmark sources and suite");
  synth->add_option("-o,--output", output, "directory")->required();
  synth->add_option("--procedures", procedures)->check(CLI::PositiveNumber);
  synth->add_option("--seed", synth_seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*trace) {
      Config cfg(s.build());
      auto srcs = c_strs(sources);
      size_t n = 0;
      check(sv_trace_dump(cfg.get(), srcs.data(), srcs.size(), output.c_str(), &n));
      std::fprintf(stderr, "%zu traces -> %s\n", n, output.c_str());
    } else if (*encode) {
      Config cfg(s.build());
      CorpusH cp;
      check(sv_corpus_encode(cfg.get(), input.c_str(), cp.out()));
      check(sv_corpus_save(cp.get(), output.c_str()));
      std::fprintf(stderr, "%zu sentences -> %s\n", sv_corpus_sentence_count(cp.get()), output.c_str());
    } else if (*corpus) {
      Config cfg(s.build());
      auto srcs = c_strs(sources);
      CorpusH cp;
      check(sv_corpus_build(cfg.get(), srcs.data(), srcs.size(), cp.out()));
      check(sv_corpus_save(cp.get(), output.c_str()));
      std::fprintf(stderr, "%zu sentences, %zu words -> %s\n", sv_corpus_sentence_count(cp.get()),
                   sv_corpus_word_count(cp.get()), output.c_str());
    } else if (*train) {
      Config cfg(s.build());
      CorpusH cp;
      check(sv_corpus_load(input.c_str(), cp.out()));
      EmbeddingH emb;
      check(sv_train(cp.get(), cfg.get(), vocab_out.empty() ? nullptr : vocab_out.c_str(), emb.out()));
      check(sv_embedding_save(emb.get(), output.c_str()));
      std::fprintf(stderr, "%zu words x %zu dims -> %s\n", sv_embedding_size(emb.get()),
                   sv_embedding_dim(emb.get()), output.c_str());
    } else if (*query) {
      EmbeddingH emb;
      check(sv_embedding_load(vectors.c_str(), emb.out()));
      ResultsH res;
      if (*similar) {
        check(sv_similar(emb.get(), word.c_str(), k, subspace.c_str(), res.out()));
      } else if (*analogy) {
        check(sv_analogy(emb.get(), a.c_str(), b.c_str(), c.c_str(), res.out()));
      } else {
        auto ws = split_commas(words);
        auto cw = c_strs(ws);
        check(sv_average(emb.get(), cw.data(), cw.size(), subspace.c_str(), k, res.out()));
      }
      print_results(res.get());
    } else if (*bench) {
      EmbeddingH emb;
      check(sv_embedding_load(vectors.c_str(), emb.out()));
      ReportH rep;
      check(sv_bench(suite.c_str(), emb.get(), s.threads.value_or(1), rep.out()));
      std::fputs(sv_report_text(rep.get(), SV_FORMAT_TABLE), stdout);
      if (!report.empty() && !write_text(report, sv_report_text(rep.get(), SV_FORMAT_TSV))) {
        std::fprintf(stderr, "symvec: cannot write %s\n", report.c_str());
        return kExitInput;
      }
    } else if (*ablate) {
      Config cfg(s.build(0));
      auto srcs = c_strs(sources);
      std::vector<std::string> ids = split_commas(configs);
      auto cids = c_strs(ids);
      AblationH abl;
      check(sv_ablate(cfg.get(), srcs.data(), srcs.size(), suite.c_str(), ids.empty() ? nullptr : cids.data(),
                      cids.size(), abl.out()));
      std::fputs(sv_ablation_text(abl.get(), SV_FORMAT_TABLE), stdout);
      if (!output.empty() && !write_text(output, sv_ablation_text(abl.get(), SV_FORMAT_TSV))) {
        std::fprintf(stderr, "symvec: cannot write %s\n", output.c_str());
        return kExitInput;
      }
    } else if (*export_errors) {
      CorpusH cp;
      check(sv_corpus_load(input.c_str(), cp.out()));
      size_t n = 0;
      check(sv_export_errors(cp.get(), output.c_str(), &n));
      std::fprintf(stderr, "%zu records -> %s\n", n, output.c_str());
    } else if (*synth) {
      check(sv_synth(output.c_str(), procedures, synth_seed));
      std::fprintf(stderr, "synthetic benchmark -> %s\n", output.c_str());
    }
  } catch (const Failure& f) {
    return f.code;
  }
  return 0;
}
