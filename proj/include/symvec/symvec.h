/* C interface to the symvec toolchain.
 *
 * Objects are opaque handles created by the new, load and build functions and
 * released with the matching free function. Every fallible call returns an
 * sv_status; on failure sv_last_error() describes the problem for the
 * calling thread until its next call into the library.
 */
#ifndef SYMVEC_SYMVEC_H
#define SYMVEC_SYMVEC_H

#include <stddef.h>
#include <stdint.h>

#if defined(SYMVEC_BUILDING)
#define SV_API __attribute__((visibility("default")))
#else
#define SV_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sv_status {
  SV_OK = 0,
  SV_ERR_SYNTAX = 1,
  SV_ERR_IO = 2,
  SV_ERR_FORMAT = 3,
  SV_ERR_CONFIG = 4,
  SV_ERR_OUT_OF_VOCABULARY = 5,
  SV_ERR_EMPTY_VOCABULARY = 6,
  SV_ERR_EMPTY_CANDIDATES = 7,
  SV_ERR_DIMENSION_MISMATCH = 8,
  SV_ERR_NUMERIC = 9,
  SV_ERR_INVALID_ARGUMENT = 10,
  SV_ERR_INTERNAL = 11
} sv_status;

typedef enum sv_format { SV_FORMAT_TSV = 0, SV_FORMAT_TABLE = 1 } sv_format;

typedef struct sv_config sv_config;
typedef struct sv_corpus sv_corpus;
typedef struct sv_embedding sv_embedding;
typedef struct sv_results sv_results;
typedef struct sv_report sv_report;
typedef struct sv_ablation sv_ablation;

SV_API const char* sv_version(void);
SV_API const char* sv_status_name(sv_status status);
SV_API const char* sv_last_error(void);

/* Warnings (e.g. skipped records) go here; the default prints to stderr.
 * Pass NULL to restore the default. */
typedef void (*sv_log_fn)(const char* message, void* user);
SV_API void sv_set_log_handler(sv_log_fn fn, void* user);

/* ---- configuration ------------------------------------------------------
 * Keys: abstraction, enable, disable, constants, errno, stop_words,
 * stop_words_file, path_budget, dim, window, iterations, learning_rate,
 * x_max, alpha, seed, min_count, threads. */
SV_API sv_status sv_config_new(const char* abstraction_id, sv_config** out);
SV_API sv_status sv_config_load(const char* path, sv_config** out);
SV_API sv_status sv_config_set(sv_config* cfg, const char* key, const char* value);
SV_API const char* sv_config_id(const sv_config* cfg);
SV_API void sv_config_free(sv_config* cfg);

/* ---- corpora ------------------------------------------------------------ */
/* `sources` are files or directories (searched for .mc and .c files). */
SV_API sv_status sv_corpus_build(const sv_config* cfg, const char* const* sources, size_t n_sources,
                                 sv_corpus** out);
/* Raw symbolic traces, before abstraction. */
SV_API sv_status sv_trace_dump(const sv_config* cfg, const char* const* sources, size_t n_sources,
                               const char* out_path, size_t* n_traces);
SV_API sv_status sv_corpus_encode(const sv_config* cfg, const char* trace_path, sv_corpus** out);
SV_API sv_status sv_corpus_load(const char* path, sv_corpus** out);
SV_API sv_status sv_corpus_save(const sv_corpus* corpus, const char* path);
SV_API size_t sv_corpus_sentence_count(const sv_corpus* corpus);
SV_API size_t sv_corpus_word_count(const sv_corpus* corpus);
/* Space-joined sentence; the pointer lives as long as the corpus. */
SV_API const char* sv_corpus_sentence(const sv_corpus* corpus, size_t index);
SV_API void sv_corpus_free(sv_corpus* corpus);

/* `label\ttokens` lines for every failing trace with an error code. */
SV_API sv_status sv_export_errors(const sv_corpus* corpus, const char* out_path, size_t* n_records);

/* ---- embeddings --------------------------------------------------------- */
/* Uses the training parameters and min_count of `cfg`. When `vocab_path` is
 * non-NULL the vocabulary is written there as `word\tcount`. */
SV_API sv_status sv_train(const sv_corpus* corpus, const sv_config* cfg, const char* vocab_path,
                          sv_embedding** out);
SV_API sv_status sv_embedding_load(const char* path, sv_embedding** out);
SV_API sv_status sv_embedding_save(const sv_embedding* emb, const char* path);
SV_API size_t sv_embedding_size(const sv_embedding* emb);
SV_API size_t sv_embedding_dim(const sv_embedding* emb);
SV_API const char* sv_embedding_word(const sv_embedding* emb, size_t id);
/* Copies the query vector of `word` into `out`, which holds `cap` doubles. */
SV_API sv_status sv_embedding_vector(const sv_embedding* emb, const char* word, double* out, size_t cap);
SV_API void sv_embedding_free(sv_embedding* emb);

/* ---- queries ------------------------------------------------------------
 * `subspace` is NULL or "*" for the whole vocabulary, "pre*" for a prefix,
 * or a comma-separated word list. */
SV_API sv_status sv_similar(const sv_embedding* emb, const char* word, size_t k, const char* subspace,
                            sv_results** out);
/* One result: the best D for A:B :: C:D and its objective value. */
SV_API sv_status sv_analogy(const sv_embedding* emb, const char* a, const char* b, const char* c,
                            sv_results** out);
SV_API sv_status sv_average(const sv_embedding* emb, const char* const* words, size_t n_words,
                            const char* subspace, size_t k, sv_results** out);
SV_API size_t sv_results_count(const sv_results* results);
SV_API const char* sv_results_word(const sv_results* results, size_t index);
SV_API double sv_results_score(const sv_results* results, size_t index);
SV_API void sv_results_free(sv_results* results);

/* ---- benchmark ---------------------------------------------------------- */
SV_API sv_status sv_bench(const char* suite_path, const sv_embedding* emb, unsigned threads, sv_report** out);
SV_API size_t sv_report_passed(const sv_report* report);
SV_API size_t sv_report_failed(const sv_report* report);
SV_API size_t sv_report_oov(const sv_report* report);
SV_API size_t sv_report_total(const sv_report* report);
SV_API double sv_report_accuracy(const sv_report* report);
SV_API const char* sv_report_text(const sv_report* report, sv_format format);
SV_API void sv_report_free(sv_report* report);

/* Runs each named configuration (all nine when `config_ids` is NULL) with the
 * training parameters of `base`. */
SV_API sv_status sv_ablate(const sv_config* base, const char* const* sources, size_t n_sources,
                           const char* suite_path, const char* const* config_ids, size_t n_ids,
                           sv_ablation** out);
SV_API size_t sv_ablation_count(const sv_ablation* ablation);
SV_API const char* sv_ablation_config(const sv_ablation* ablation, size_t index);
SV_API double sv_ablation_accuracy(const sv_ablation* ablation, size_t index);
SV_API const char* sv_ablation_text(const sv_ablation* ablation, sv_format format);
SV_API void sv_ablation_free(sv_ablation* ablation);

/* Writes the synthetic benchmark sources and suite.tsv into `dir`. */
SV_API sv_status sv_synth(const char* dir, size_t procedures, uint64_t seed);

#ifdef __cplusplus
}
#endif

#endif
