#include "symvec/symvec.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <new>
#include <sstream>

#include "symvec/bench.hpp"
#include "symvec/config.hpp"
#include "symvec/error.hpp"
#include "symvec/pipeline.hpp"
#include "symvec/query.hpp"
#include "symvec/synth.hpp"

struct sv_config {
  symvec::PipelineConfig cfg;
};

struct sv_corpus {
  symvec::Corpus corpus;
  mutable std::vector<std::unique_ptr<std::string>> joined;
};

struct sv_embedding {
  symvec::Embedding emb;
  std::unique_ptr<symvec::QueryIndex> index;
};

struct sv_results {
  std::vector<symvec::Neighbor> items;
};

struct sv_report {
  symvec::EvalReport report;
  mutable std::string text[2];
};

struct sv_ablation {
  std::vector<symvec::AblationResult> results;
  mutable std::string text[2];
};

namespace {

thread_local std::string g_last_error;
sv_log_fn g_log = nullptr;
void* g_log_user = nullptr;

void log_warning(const std::string& msg) {
  if (g_log) {
    g_log(msg.c_str(), g_log_user);
  } else {
    std::fprintf(stderr, "warning: %s\n", msg.c_str());
  }
}

sv_status status_of(symvec::ErrorKind kind) {
  using K = symvec::ErrorKind;
  switch (kind) {
    case K::Syntax: return SV_ERR_SYNTAX;
    case K::Io: return SV_ERR_IO;
    case K::Format: return SV_ERR_FORMAT;
    case K::Config: return SV_ERR_CONFIG;
    case K::OutOfVocabulary: return SV_ERR_OUT_OF_VOCABULARY;
    case K::EmptyVocabulary: return SV_ERR_EMPTY_VOCABULARY;
    case K::EmptyCandidates: return SV_ERR_EMPTY_CANDIDATES;
    case K::DimensionMismatch: return SV_ERR_DIMENSION_MISMATCH;
    case K::Numeric: return SV_ERR_NUMERIC;
    case K::InvalidArgument: return SV_ERR_INVALID_ARGUMENT;
  }
  return SV_ERR_INTERNAL;
}

template <typename F>
sv_status guarded(F&& f) {
  g_last_error.clear();
  try {
    f();
    return SV_OK;
  } catch (const symvec::Error& e) {
    g_last_error = e.what();
    return status_of(e.kind());
  } catch (const std::filesystem::filesystem_error& e) {
    g_last_error = e.what();
    return SV_ERR_IO;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return SV_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SV_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return SV_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw symvec::Error(symvec::ErrorKind::InvalidArgument, what);
}

std::vector<std::filesystem::path> paths_of(const char* const* items, size_t n) {
  require(n == 0 || items != nullptr, "null source list");
  std::vector<std::filesystem::path> out;
  for (size_t i = 0; i < n; ++i) {
    require(items[i] != nullptr, "null source path");
    out.emplace_back(items[i]);
  }
  require(!out.empty(), "no sources given");
  return out;
}

std::vector<symvec::Program> load_programs(const char* const* sources, size_t n) {
  return symvec::parse_sources(symvec::collect_sources(paths_of(sources, n)));
}

symvec::Subspace subspace_of(const char* spec) {
  return spec == nullptr ? symvec::Subspace::all() : symvec::Subspace::parse(spec);
}

}  // namespace

extern "C" {

const char* sv_version(void) { return "0.1.0"; }

const char* sv_status_name(sv_status status) {
  switch (status) {
    case SV_OK: return "ok";
    case SV_ERR_SYNTAX: return "syntax error";
    case SV_ERR_IO: return "i/o error";
    case SV_ERR_FORMAT: return "format error";
    case SV_ERR_CONFIG: return "configuration error";
    case SV_ERR_OUT_OF_VOCABULARY: return "out of vocabulary";
    case SV_ERR_EMPTY_VOCABULARY: return "empty vocabulary";
    case SV_ERR_EMPTY_CANDIDATES: return "empty candidate set";
    case SV_ERR_DIMENSION_MISMATCH: return "dimension mismatch";
    case SV_ERR_NUMERIC: return "numeric error";
    case SV_ERR_INVALID_ARGUMENT: return "invalid argument";
    case SV_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* sv_last_error(void) { return g_last_error.c_str(); }

void sv_set_log_handler(sv_log_fn fn, void* user) {
  g_log = fn;
  g_log_user = user;
}

sv_status sv_config_new(const char* abstraction_id, sv_config** out) {
  return guarded([&] {
    require(out != nullptr, "null output handle");
    auto c = std::make_unique<sv_config>();
    if (abstraction_id) c->cfg.set("abstraction", abstraction_id);
    *out = c.release();
  });
}

sv_status sv_config_load(const char* path, sv_config** out) {
  return guarded([&] {
    require(path && out, "null argument");
    auto c = std::make_unique<sv_config>();
    c->cfg = symvec::PipelineConfig::load(path);
    *out = c.release();
  });
}

sv_status sv_config_set(sv_config* cfg, const char* key, const char* value) {
  return guarded([&] {
    require(cfg && key && value, "null argument");
    symvec::PipelineConfig next = cfg->cfg;
    next.set(key, value);
    next.train.validate();
    cfg->cfg = std::move(next);
  });
}

const char* sv_config_id(const sv_config* cfg) { return cfg ? cfg->cfg.abstraction.id.c_str() : ""; }

void sv_config_free(sv_config* cfg) { delete cfg; }

sv_status sv_corpus_build(const sv_config* cfg, const char* const* sources, size_t n_sources,
                          sv_corpus** out) {
  return guarded([&] {
    require(cfg && out, "null argument");
    auto c = std::make_unique<sv_corpus>();
    c->corpus = symvec::build_corpus(load_programs(sources, n_sources), cfg->cfg.abstraction, cfg->cfg.threads);
    *out = c.release();
  });
}

sv_status sv_trace_dump(const sv_config* cfg, const char* const* sources, size_t n_sources,
                        const char* out_path, size_t* n_traces) {
  return guarded([&] {
    require(cfg && out_path, "null argument");
    auto traces = symvec::trace_programs(load_programs(sources, n_sources), cfg->cfg.abstraction.path_budget,
                                         cfg->cfg.threads);
    symvec::write_file_atomically(out_path, [&](std::ostream& os) { symvec::write_traces(os, traces); });
    if (n_traces) *n_traces = traces.size();
  });
}

sv_status sv_corpus_encode(const sv_config* cfg, const char* trace_path, sv_corpus** out) {
  return guarded([&] {
    require(cfg && trace_path && out, "null argument");
    std::ifstream in(trace_path);
    if (!in) throw symvec::Error(symvec::ErrorKind::Io, std::string("cannot open ") + trace_path);
    std::vector<symvec::Trace> traces;
    try {
      traces = symvec::read_traces(in);
    } catch (const symvec::Error& e) {
      throw symvec::Error(e.kind(), std::string(trace_path) + ": " + e.what());
    }
    auto c = std::make_unique<sv_corpus>();
    c->corpus = symvec::encode_traces(traces, cfg->cfg.abstraction);
    c->corpus.provenance.sources = {trace_path};
    *out = c.release();
  });
}

sv_status sv_corpus_load(const char* path, sv_corpus** out) {
  return guarded([&] {
    require(path && out, "null argument");
    auto c = std::make_unique<sv_corpus>();
    c->corpus = symvec::load_corpus(path);
    *out = c.release();
  });
}

sv_status sv_corpus_save(const sv_corpus* corpus, const char* path) {
  return guarded([&] {
    require(corpus && path, "null argument");
    symvec::save_corpus(corpus->corpus, path);
  });
}

size_t sv_corpus_sentence_count(const sv_corpus* corpus) { return corpus ? corpus->corpus.sentences.size() : 0; }

size_t sv_corpus_word_count(const sv_corpus* corpus) { return corpus ? corpus->corpus.word_count() : 0; }

const char* sv_corpus_sentence(const sv_corpus* corpus, size_t index) {
  if (!corpus || index >= corpus->corpus.sentences.size()) return nullptr;
  if (corpus->joined.empty()) corpus->joined.resize(corpus->corpus.sentences.size());
  auto& slot = corpus->joined[index];
  if (!slot) slot = std::make_unique<std::string>(symvec::join_sentence(corpus->corpus.sentences[index]));
  return slot->c_str();
}

void sv_corpus_free(sv_corpus* corpus) { delete corpus; }

sv_status sv_export_errors(const sv_corpus* corpus, const char* out_path, size_t* n_records) {
  return guarded([&] {
    require(corpus && out_path, "null argument");
    std::vector<std::string> warnings;
    auto records = symvec::export_error_dataset(corpus->corpus, &warnings);
    for (const auto& w : warnings) log_warning(w);
    symvec::write_file_atomically(out_path, [&](std::ostream& os) { symvec::write_error_dataset(os, records); });
    if (n_records) *n_records = records.size();
  });
}

sv_status sv_train(const sv_corpus* corpus, const sv_config* cfg, const char* vocab_path, sv_embedding** out) {
  return guarded([&] {
    require(corpus && cfg && out, "null argument");
    const auto& p = cfg->cfg.train;
    p.validate();
    auto vocab = symvec::Vocabulary::build(corpus->corpus, p.min_count);
    if (vocab_path)
      symvec::write_file_atomically(vocab_path, [&](std::ostream& os) { vocab.write_tsv(os); });
    auto x = symvec::build_cooccurrence(corpus->corpus, vocab, p.window, cfg->cfg.threads);
    if (x.empty())
      throw symvec::Error(symvec::ErrorKind::EmptyVocabulary,
                          "no co-occurring words within the window; nothing to train");
    auto e = std::make_unique<sv_embedding>();
    e->emb = symvec::train_embedding(x, vocab, p);
    e->index = std::make_unique<symvec::QueryIndex>(e->emb);
    *out = e.release();
  });
}

sv_status sv_embedding_load(const char* path, sv_embedding** out) {
  return guarded([&] {
    require(path && out, "null argument");
    auto e = std::make_unique<sv_embedding>();
    e->emb = symvec::load_embedding(path);
    e->index = std::make_unique<symvec::QueryIndex>(e->emb);
    *out = e.release();
  });
}

sv_status sv_embedding_save(const sv_embedding* emb, const char* path) {
  return guarded([&] {
    require(emb && path, "null argument");
    symvec::save_embedding(emb->emb, path);
  });
}

size_t sv_embedding_size(const sv_embedding* emb) { return emb ? emb->emb.size() : 0; }

size_t sv_embedding_dim(const sv_embedding* emb) { return emb ? emb->emb.dim : 0; }

const char* sv_embedding_word(const sv_embedding* emb, size_t id) {
  if (!emb || id >= emb->emb.size()) return nullptr;
  return emb->emb.vocab.word(static_cast<std::uint32_t>(id)).c_str();
}

sv_status sv_embedding_vector(const sv_embedding* emb, const char* word, double* out, size_t cap) {
  return guarded([&] {
    require(emb && word && out, "null argument");
    auto v = emb->emb.query_vector(std::string(word));
    if (cap < v.size())
      throw symvec::Error(symvec::ErrorKind::DimensionMismatch,
                          "buffer holds " + std::to_string(cap) + " values, need " + std::to_string(v.size()));
    std::copy(v.begin(), v.end(), out);
  });
}

void sv_embedding_free(sv_embedding* emb) { delete emb; }

sv_status sv_similar(const sv_embedding* emb, const char* word, size_t k, const char* subspace, sv_results** out) {
  return guarded([&] {
    require(emb && word && out, "null argument");
    const auto& index = *emb->index;
    auto id = index.require(word);
    auto sub = subspace_of(subspace);
    auto r = std::make_unique<sv_results>();
    r->items = index.nearest(index.vector(id), k, &sub, {id});
    *out = r.release();
  });
}

sv_status sv_analogy(const sv_embedding* emb, const char* a, const char* b, const char* c, sv_results** out) {
  return guarded([&] {
    require(emb && a && b && c && out, "null argument");
    const auto& index = *emb->index;
    std::string d = index.analogy(a, b, c);
    auto id = index.require(d);
    double score = index.cosine(id, index.require(b)) - index.cosine(id, index.require(a)) +
                   index.cosine(id, index.require(c));
    auto r = std::make_unique<sv_results>();
    r->items.push_back({d, id, score});
    *out = r.release();
  });
}

sv_status sv_average(const sv_embedding* emb, const char* const* words, size_t n_words, const char* subspace,
                     size_t k, sv_results** out) {
  return guarded([&] {
    require(emb && out && (n_words == 0 || words), "null argument");
    std::vector<std::string> ws;
    for (size_t i = 0; i < n_words; ++i) {
      require(words[i] != nullptr, "null word");
      ws.emplace_back(words[i]);
    }
    auto r = std::make_unique<sv_results>();
    r->items = emb->index->averaged(ws, subspace_of(subspace), k);
    *out = r.release();
  });
}

size_t sv_results_count(const sv_results* results) { return results ? results->items.size() : 0; }

const char* sv_results_word(const sv_results* results, size_t index) {
  if (!results || index >= results->items.size()) return nullptr;
  return results->items[index].word.c_str();
}

double sv_results_score(const sv_results* results, size_t index) {
  if (!results || index >= results->items.size()) return 0.0;
  return results->items[index].similarity;
}

void sv_results_free(sv_results* results) { delete results; }

sv_status sv_bench(const char* suite_path, const sv_embedding* emb, unsigned threads, sv_report** out) {
  return guarded([&] {
    require(suite_path && emb && out, "null argument");
    auto suite = symvec::AnalogySuite::load(suite_path);
    auto r = std::make_unique<sv_report>();
    r->report = symvec::evaluate_suite(suite, *emb->index, threads);
    *out = r.release();
  });
}

size_t sv_report_passed(const sv_report* report) { return report ? report->report.passed() : 0; }
size_t sv_report_failed(const sv_report* report) { return report ? report->report.failed() : 0; }
size_t sv_report_oov(const sv_report* report) { return report ? report->report.oov() : 0; }
size_t sv_report_total(const sv_report* report) { return report ? report->report.total() : 0; }
double sv_report_accuracy(const sv_report* report) { return report ? report->report.accuracy() : 0.0; }

const char* sv_report_text(const sv_report* report, sv_format format) {
  if (!report) return "";
  int slot = format == SV_FORMAT_TABLE ? 1 : 0;
  if (report->text[slot].empty()) {
    std::ostringstream os;
    if (slot == 1) {
      symvec::write_report_table(os, report->report);
    } else {
      symvec::write_report_tsv(os, report->report);
    }
    report->text[slot] = os.str();
  }
  return report->text[slot].c_str();
}

void sv_report_free(sv_report* report) { delete report; }

sv_status sv_ablate(const sv_config* base, const char* const* sources, size_t n_sources, const char* suite_path,
                    const char* const* config_ids, size_t n_ids, sv_ablation** out) {
  return guarded([&] {
    require(base && suite_path && out, "null argument");
    std::vector<std::string> ids;
    if (config_ids) {
      for (size_t i = 0; i < n_ids; ++i) {
        require(config_ids[i] != nullptr, "null configuration id");
        ids.emplace_back(config_ids[i]);
      }
    } else {
      ids = symvec::ablation_config_ids();
    }
    for (const auto& id : ids) symvec::named_config(id);
    auto suite = symvec::AnalogySuite::load(suite_path);
    auto programs = load_programs(sources, n_sources);
    auto a = std::make_unique<sv_ablation>();
    a->results = symvec::run_ablation(programs, ids, base->cfg, suite);
    *out = a.release();
  });
}

size_t sv_ablation_count(const sv_ablation* ablation) { return ablation ? ablation->results.size() : 0; }

const char* sv_ablation_config(const sv_ablation* ablation, size_t index) {
  if (!ablation || index >= ablation->results.size()) return nullptr;
  return ablation->results[index].config_id.c_str();
}

double sv_ablation_accuracy(const sv_ablation* ablation, size_t index) {
  if (!ablation || index >= ablation->results.size()) return 0.0;
  return ablation->results[index].report.accuracy();
}

const char* sv_ablation_text(const sv_ablation* ablation, sv_format format) {
  if (!ablation) return "";
  int slot = format == SV_FORMAT_TABLE ? 1 : 0;
  if (ablation->text[slot].empty()) {
    std::ostringstream os;
    if (slot == 1) {
      symvec::write_ablation_table(os, ablation->results);
    } else {
      symvec::write_ablation_tsv(os, ablation->results);
    }
    ablation->text[slot] = os.str();
  }
  return ablation->text[slot].c_str();
}

void sv_ablation_free(sv_ablation* ablation) { delete ablation; }

sv_status sv_synth(const char* dir, size_t procedures, uint64_t seed) {
  return guarded([&] {
    require(dir != nullptr, "null argument");
    symvec::SynthOptions opts;
    opts.procedures = procedures;
    opts.seed = seed;
    symvec::write_synthetic(symvec::generate_synthetic(opts), dir);
  });
}

}  // extern "C"
