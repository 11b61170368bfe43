/*
 * relinker C API.
 *
 * Every function returns an rl_status. On failure rl_last_error() holds a
 * message for the calling thread until its next call into the library.
 * Strings handed out through char** parameters are heap-allocated,
 * NUL-terminated UTF-8 and must be released with rl_free(). Handles are
 * opaque; each *_new / *_load / *_build has a matching *_free that accepts
 * NULL.
 *
 * Handles are immutable once built except rl_config (set/load) and
 * rl_index (rl_index_set_size_estimate); immutable handles may be shared
 * between threads.
 */
#ifndef RELINKER_RELINKER_H
#define RELINKER_RELINKER_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(RELINKER_BUILDING)
#    define RL_API __declspec(dllexport)
#  else
#    define RL_API __declspec(dllimport)
#  endif
#else
#  define RL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rl_status {
  RL_OK = 0,
  RL_E_INVALID_ARGUMENT = 1,
  RL_E_IO = 2,
  RL_E_PARSE = 3,
  RL_E_EMPTY_CORPUS = 4,
  RL_E_EMPTY_QUERY = 5,
  RL_E_PROVIDER = 6,
  RL_E_MALFORMED_URI = 7,
  RL_E_KEY_MISMATCH = 8,
  RL_E_OUT_OF_RANGE = 9,
  RL_E_INTERNAL = 10
} rl_status;

typedef enum rl_similarity_class {
  RL_SIM_EXACT = 0,
  RL_SIM_HIGH = 1,
  RL_SIM_MEDIUM = 2,
  RL_SIM_LOW = 3,
  RL_SIM_NONE = 4
} rl_similarity_class;

typedef enum rl_verdict_rule {
  RL_RULE_EXACT_STOP_TITLE = 0,
  RL_RULE_TERM_RATIO = 1,
  RL_RULE_CHAR_RATIO = 2,
  RL_RULE_PASS = 3
} rl_verdict_rule;

typedef enum rl_log_level {
  RL_LOG_DEBUG = 0,
  RL_LOG_INFO = 1,
  RL_LOG_WARNING = 2,
  RL_LOG_ERROR = 3,
  RL_LOG_OFF = 4
} rl_log_level;

typedef struct rl_title_verdict {
  int predicted_good;
  rl_verdict_rule rule;
  double term_ratio;
  double char_ratio;
  int long_title; /* more than 24 terms; informational */
} rl_title_verdict;

typedef struct rl_config rl_config;
typedef struct rl_corpus rl_corpus;
typedef struct rl_index rl_index;
typedef struct rl_stop_titles rl_stop_titles;
typedef struct rl_archive rl_archive;

/* ---- library ---------------------------------------------------------- */

RL_API const char* rl_version(void);
RL_API const char* rl_status_name(rl_status status);
RL_API const char* rl_last_error(void);
RL_API void rl_free(char* s);
RL_API void rl_set_log_level(rl_log_level level);

/* ---- configuration ---------------------------------------------------- */

RL_API rl_status rl_config_new(rl_config** out);
RL_API void rl_config_free(rl_config* config);
/* key is one of the flat config keys (min_terms, ls_k, shingle_w, ...).
 * Only the key's own range is checked here; constraints between keys are
 * checked whenever the config is consumed. */
RL_API rl_status rl_config_set(rl_config* config, const char* key, const char* value);
RL_API rl_status rl_config_load(rl_config* config, const char* path);
RL_API rl_status rl_config_json(const rl_config* config, char** out);

/* ---- text ------------------------------------------------------------- */

/* *out is set to NULL when the page has no usable title. */
RL_API rl_status rl_extract_title(const char* html, size_t len, char** out);
RL_API rl_status rl_extract_text(const char* html, size_t len, char** out);
/* JSON array of terms. */
RL_API rl_status rl_tokenize(const char* text, char** out_json);
RL_API rl_status rl_canonicalize_uri(const char* uri, char** out);

/* ---- similarity ------------------------------------------------------- */

RL_API rl_status rl_levenshtein_norm(const char* a, const char* b, double* out);
/* Both texts are tokenized before comparison. */
RL_API rl_status rl_term_overlap(const char* text_a, const char* text_b, double* out);
RL_API rl_status rl_resemblance(const char* text_a, const char* text_b, size_t w, double* out);
RL_API rl_status rl_classify(double value, rl_similarity_class* out);
/* metric: "levenshtein", "overlap", "shingle" or "all". With html != 0 the
 * files are parsed as HTML (titles for levenshtein, visible text for the
 * term metrics); otherwise they are plain text. */
RL_API rl_status rl_sim_files(const char* path_a, const char* path_b, const char* metric, int html,
                              const rl_config* config, char** out_json);

/* ---- corpus ----------------------------------------------------------- */

RL_API rl_status rl_corpus_load(const char* manifest_path, const rl_config* config, rl_corpus** out);
RL_API void rl_corpus_free(rl_corpus* corpus);
RL_API size_t rl_corpus_size(const rl_corpus* corpus);
RL_API size_t rl_corpus_admitted(const rl_corpus* corpus);
RL_API rl_status rl_corpus_report_json(const rl_corpus* corpus, const rl_config* config, char** out);
RL_API rl_status rl_corpus_titles_json(const rl_corpus* corpus, const rl_config* config, char** out);

/* ---- index ------------------------------------------------------------ */

/* Indexes the admitted documents; applies index_size_estimate. */
RL_API rl_status rl_index_build(const rl_corpus* corpus, const rl_config* config, rl_index** out);
RL_API rl_status rl_index_load(const char* path, rl_index** out);
RL_API rl_status rl_index_save(const rl_index* index, const char* path);
RL_API void rl_index_free(rl_index* index);
/* 0 clears the estimate. */
RL_API rl_status rl_index_set_size_estimate(rl_index* index, uint64_t estimate);
RL_API rl_status rl_index_df(const rl_index* index, const char* term, uint64_t* out);
RL_API rl_status rl_index_size(const rl_index* index, uint64_t* out);
RL_API rl_status rl_index_stats_json(const rl_index* index, const rl_config* config, char** out);
/* max_results == 0 uses the configured max_results. */
RL_API rl_status rl_index_search_json(const rl_index* index, const char* query, int and_mode, size_t max_results,
                                      const rl_config* config, char** out);

/* ---- lexical signatures ---------------------------------------------- */

/* k == 0 generates one signature per configured ls_k length. */
RL_API rl_status rl_signatures_json(const rl_corpus* corpus, const rl_index* index, const rl_config* config, size_t k,
                                    char** out);

/* ---- title quality ---------------------------------------------------- */

RL_API rl_status rl_stop_titles_default(rl_stop_titles** out);
RL_API rl_status rl_stop_titles_load(const char* path, rl_stop_titles** out);
/* The list named by stop_title_path, or the default list. */
RL_API rl_status rl_stop_titles_for_config(const rl_config* config, rl_stop_titles** out);
/* Adds the phrases of a text file (one per line) to an existing list. */
RL_API rl_status rl_stop_titles_extend(rl_stop_titles* list, const char* path);
RL_API void rl_stop_titles_free(rl_stop_titles* list);

RL_API rl_status rl_predict_title(const rl_stop_titles* list, const char* title, double threshold,
                                  rl_title_verdict* out);
/* keys may be NULL; otherwise keys[i] (or NULL) labels titles[i]. */
RL_API rl_status rl_quality_json(const rl_stop_titles* list, const rl_config* config, const char* const* titles,
                                 const char* const* keys, size_t count, char** out);
/* Verdicts for every admitted document with a title, keyed by URI. */
RL_API rl_status rl_quality_corpus_json(const rl_stop_titles* list, const rl_corpus* corpus, const rl_config* config,
                                        char** out);
/* Joins verdict JSON (key → predicted_good) with outcome JSON (uri →
 * discovered). With intersect != 0 only shared keys are used; otherwise a
 * key mismatch fails with RL_E_KEY_MISMATCH. Either output may be NULL. */
RL_API rl_status rl_confusion_eval(const char* verdicts_json, const char* outcomes_json, int intersect,
                                   const rl_config* config, char** out_json, char** out_tsv);
/* Stop-title list text (one phrase per line) distilled from title-strategy
 * outcome JSON. */
RL_API rl_status rl_distill_stop_titles(const char* outcomes_json, size_t min_occurrences, char** out);

/* ---- rediscovery ------------------------------------------------------ */

/* strategy: "title", "ls5" or "ls7"; searches the local index. */
RL_API rl_status rl_rediscover(const rl_corpus* corpus, const rl_index* index, const rl_config* config,
                               const char* strategy, char** outcomes_json, char** summary_tsv);
RL_API rl_status rl_relevance_csv(const rl_corpus* corpus, const rl_index* index, const rl_config* config,
                                  const char* strategy, char** out);

/* ---- archive ---------------------------------------------------------- */

RL_API rl_status rl_archive_put(const char* snapshot_dir, const char* uri, const char* timestamp, const char* html,
                                size_t len);
/* Baselines are the corpus pages; archived URIs without one are skipped. */
RL_API rl_status rl_archive_load(const char* snapshot_dir, const rl_corpus* baselines, rl_archive** out);
RL_API void rl_archive_free(rl_archive* archive);
RL_API size_t rl_archive_size(const rl_archive* archive);
RL_API rl_status rl_windows_json(const rl_config* config, char** out);
RL_API rl_status rl_evolve_csv(const rl_archive* archive, const rl_config* config, char** out);
RL_API rl_status rl_correlate_csv(const rl_archive* archive, const rl_config* config, char** out);

#ifdef __cplusplus
}
#endif

#endif /* RELINKER_RELINKER_H */
