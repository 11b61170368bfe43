#include "relinker/relinker.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <filesystem>
#include <memory>
#include <new>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "relinker/archive.hpp"
#include "relinker/config.hpp"
#include "relinker/corpus.hpp"
#include "relinker/error.hpp"
#include "relinker/html.hpp"
#include "relinker/index.hpp"
#include "relinker/log.hpp"
#include "relinker/quality.hpp"
#include "relinker/rediscovery.hpp"
#include "relinker/report.hpp"
#include "relinker/similarity.hpp"
#include "relinker/uri.hpp"
#include "relinker/utf8.hpp"

struct rl_config {
  relinker::Config value;
};

struct rl_corpus {
  relinker::Corpus corpus;
  std::vector<relinker::PageDocument> admitted;
};

struct rl_index {
  relinker::InvertedIndex index;
};

struct rl_stop_titles {
  relinker::StopTitleList list;
};

struct rl_archive {
  std::vector<relinker::SnapshotSeries> series;
};

namespace {

using namespace relinker;

thread_local std::string g_last_error;

rl_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return RL_E_INVALID_ARGUMENT;
    case ErrorCode::Io: return RL_E_IO;
    case ErrorCode::Parse: return RL_E_PARSE;
    case ErrorCode::EmptyCorpus: return RL_E_EMPTY_CORPUS;
    case ErrorCode::EmptyQuery: return RL_E_EMPTY_QUERY;
    case ErrorCode::Provider: return RL_E_PROVIDER;
    case ErrorCode::MalformedUri: return RL_E_MALFORMED_URI;
    case ErrorCode::KeyMismatch: return RL_E_KEY_MISMATCH;
    case ErrorCode::OutOfRange: return RL_E_OUT_OF_RANGE;
  }
  return RL_E_INTERNAL;
}

// Runs fn, translating exceptions into a status and the thread's last error.
template <typename Fn>
rl_status guarded(Fn&& fn) {
  g_last_error.clear();
  try {
    fn();
    return RL_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::filesystem::filesystem_error& e) {
    g_last_error = e.what();
    return RL_E_IO;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return RL_E_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return RL_E_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return RL_E_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, std::string(what) + " must not be NULL");
}

char* dup(std::string_view s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size());
  out[s.size()] = '\0';
  return out;
}

void emit(char** out, std::string_view s) {
  if (out) *out = dup(s);
}

const Config& config_or_default(const rl_config* config) {
  static const Config kDefault;
  if (!config) return kDefault;
  config->value.validate();
  return config->value;
}

rl_similarity_class to_c(SimilarityClass c) { return static_cast<rl_similarity_class>(static_cast<int>(c)); }
rl_verdict_rule to_c(VerdictRule r) { return static_cast<rl_verdict_rule>(static_cast<int>(r)); }

}  // namespace

extern "C" {

const char* rl_version(void) { return "1.0.0"; }

const char* rl_status_name(rl_status status) {
  switch (status) {
    case RL_OK: return "OK";
    case RL_E_INVALID_ARGUMENT: return "InvalidArgument";
    case RL_E_IO: return "Io";
    case RL_E_PARSE: return "Parse";
    case RL_E_EMPTY_CORPUS: return "EmptyCorpus";
    case RL_E_EMPTY_QUERY: return "EmptyQuery";
    case RL_E_PROVIDER: return "Provider";
    case RL_E_MALFORMED_URI: return "MalformedUri";
    case RL_E_KEY_MISMATCH: return "KeyMismatch";
    case RL_E_OUT_OF_RANGE: return "OutOfRange";
    case RL_E_INTERNAL: return "Internal";
  }
  return "Unknown";
}

const char* rl_last_error(void) { return g_last_error.c_str(); }

void rl_free(char* s) { std::free(s); }

void rl_set_log_level(rl_log_level level) { set_log_level(static_cast<LogLevel>(level)); }

/* configuration */

rl_status rl_config_new(rl_config** out) {
  return guarded([&] {
    require(out, "out");
    *out = new rl_config{};
  });
}

void rl_config_free(rl_config* config) { delete config; }

rl_status rl_config_set(rl_config* config, const char* key, const char* value) {
  return guarded([&] {
    require(config && key && value, "config, key and value");
    config->value.set(key, value);
  });
}

rl_status rl_config_load(rl_config* config, const char* path) {
  return guarded([&] {
    require(config && path, "config and path");
    config->value.load_file(path);
  });
}

rl_status rl_config_json(const rl_config* config, char** out) {
  return guarded([&] {
    require(out, "out");
    emit(out, nlohmann::json(config_or_default(config)).dump(2) + "\n");
  });
}

/* text */

rl_status rl_extract_title(const char* html, size_t len, char** out) {
  return guarded([&] {
    require(out && (html || len == 0), "html and out");
    const auto title = relinker::extract_title(std::string_view(html ? html : "", len));
    *out = title ? dup(title->raw) : nullptr;
  });
}

rl_status rl_extract_text(const char* html, size_t len, char** out) {
  return guarded([&] {
    require(out && (html || len == 0), "html and out");
    emit(out, html::extract_text(std::string_view(html ? html : "", len)));
  });
}

rl_status rl_tokenize(const char* text, char** out_json) {
  return guarded([&] {
    require(text && out_json, "text and out_json");
    emit(out_json, nlohmann::json(tokenize(text)).dump());
  });
}

rl_status rl_canonicalize_uri(const char* uri, char** out) {
  return guarded([&] {
    require(uri && out, "uri and out");
    emit(out, canonicalize_uri(uri));
  });
}

/* similarity */

rl_status rl_levenshtein_norm(const char* a, const char* b, double* out) {
  return guarded([&] {
    require(a && b && out, "a, b and out");
    *out = levenshtein_norm(a, b);
  });
}

rl_status rl_term_overlap(const char* text_a, const char* text_b, double* out) {
  return guarded([&] {
    require(text_a && text_b && out, "texts and out");
    *out = term_overlap(tokenize(text_a), tokenize(text_b));
  });
}

rl_status rl_resemblance(const char* text_a, const char* text_b, size_t w, double* out) {
  return guarded([&] {
    require(text_a && text_b && out, "texts and out");
    *out = resemblance(ShingleSet(tokenize(text_a), w), ShingleSet(tokenize(text_b), w));
  });
}

rl_status rl_classify(double value, rl_similarity_class* out) {
  return guarded([&] {
    require(out, "out");
    *out = to_c(classify(value));
  });
}

rl_status rl_sim_files(const char* path_a, const char* path_b, const char* metric, int html,
                       const rl_config* config, char** out_json) {
  return guarded([&] {
    require(path_a && path_b && metric && out_json, "paths, metric and out_json");
    const std::string m = metric;
    if (m != "levenshtein" && m != "overlap" && m != "shingle" && m != "all") {
      throw Error(ErrorCode::InvalidArgument, "unknown metric '" + m + "' (levenshtein, overlap, shingle, all)");
    }
    const Config& cfg = config_or_default(config);
    const std::string raw_a = read_file(path_a);
    const std::string raw_b = read_file(path_b);
    std::string display_a, display_b;
    Terms terms_a, terms_b;
    if (html) {
      const auto ta = html::extract_title(raw_a);
      const auto tb = html::extract_title(raw_b);
      display_a = ta.value_or("");
      display_b = tb.value_or("");
      terms_a = tokenize(html::extract_text(raw_a));
      terms_b = tokenize(html::extract_text(raw_b));
    } else {
      display_a = html::collapse_whitespace(utf8::sanitize(raw_a));
      display_b = html::collapse_whitespace(utf8::sanitize(raw_b));
      terms_a = tokenize(display_a);
      terms_b = tokenize(display_b);
    }
    nlohmann::json j;
    j["config"] = cfg;
    j["a"] = path_a;
    j["b"] = path_b;
    j["input"] = html ? "html" : "text";
    nlohmann::json metrics = nlohmann::json::object();
    const auto add = [&](const char* name, double v, bool with_class) {
      nlohmann::json item = {{"value", v}};
      if (with_class) item["class"] = similarity_class_name(classify(v));
      metrics[name] = item;
    };
    if (m == "levenshtein" || m == "all") add("levenshtein", levenshtein_norm(display_a, display_b), false);
    if (m == "overlap" || m == "all") add("overlap", term_overlap(terms_a, terms_b), true);
    if (m == "shingle" || m == "all") {
      add("shingle", resemblance(ShingleSet(terms_a, cfg.shingle_w), ShingleSet(terms_b, cfg.shingle_w)), true);
    }
    j["metrics"] = metrics;
    emit(out_json, j.dump(2) + "\n");
  });
}

/* corpus */

rl_status rl_corpus_load(const char* manifest_path, const rl_config* config, rl_corpus** out) {
  return guarded([&] {
    require(manifest_path && out, "manifest_path and out");
    AdmissionPolicy policy;
    policy.min_terms = config_or_default(config).min_terms;
    auto c = std::make_unique<rl_corpus>();
    c->corpus = load_corpus(manifest_path, policy);
    c->admitted = c->corpus.admitted();
    *out = c.release();
  });
}

void rl_corpus_free(rl_corpus* corpus) { delete corpus; }

size_t rl_corpus_size(const rl_corpus* corpus) { return corpus ? corpus->corpus.documents.size() : 0; }

size_t rl_corpus_admitted(const rl_corpus* corpus) { return corpus ? corpus->admitted.size() : 0; }

rl_status rl_corpus_report_json(const rl_corpus* corpus, const rl_config* config, char** out) {
  return guarded([&] {
    require(corpus && out, "corpus and out");
    emit(out, report::ingest_json(corpus->corpus, config_or_default(config)));
  });
}

rl_status rl_corpus_titles_json(const rl_corpus* corpus, const rl_config* config, char** out) {
  return guarded([&] {
    require(corpus && out, "corpus and out");
    emit(out, report::titles_json(corpus->corpus, config_or_default(config)));
  });
}

/* index */

rl_status rl_index_build(const rl_corpus* corpus, const rl_config* config, rl_index** out) {
  return guarded([&] {
    require(corpus && out, "corpus and out");
    auto idx = std::make_unique<rl_index>(rl_index{InvertedIndex::build(corpus->admitted)});
    idx->index.set_index_size_estimate(config_or_default(config).index_size_estimate);
    *out = idx.release();
  });
}

rl_status rl_index_load(const char* path, rl_index** out) {
  return guarded([&] {
    require(path && out, "path and out");
    *out = new rl_index{InvertedIndex::load(path)};
  });
}

rl_status rl_index_save(const rl_index* index, const char* path) {
  return guarded([&] {
    require(index && path, "index and path");
    index->index.save(path);
  });
}

void rl_index_free(rl_index* index) { delete index; }

rl_status rl_index_set_size_estimate(rl_index* index, uint64_t estimate) {
  return guarded([&] {
    require(index, "index");
    index->index.set_index_size_estimate(estimate ? std::optional<uint64_t>(estimate) : std::nullopt);
  });
}

rl_status rl_index_df(const rl_index* index, const char* term, uint64_t* out) {
  return guarded([&] {
    require(index && term && out, "index, term and out");
    *out = index->index.df(term);
  });
}

rl_status rl_index_size(const rl_index* index, uint64_t* out) {
  return guarded([&] {
    require(index && out, "index and out");
    *out = index->index.index_size();
  });
}

rl_status rl_index_stats_json(const rl_index* index, const rl_config* config, char** out) {
  return guarded([&] {
    require(index && out, "index and out");
    emit(out, report::index_stats_json(index->index, config_or_default(config)));
  });
}

rl_status rl_index_search_json(const rl_index* index, const char* query, int and_mode, size_t max_results,
                               const rl_config* config, char** out) {
  return guarded([&] {
    require(index && query && out, "index, query and out");
    const Config& cfg = config_or_default(config);
    const size_t limit = max_results ? max_results : cfg.max_results;
    emit(out, report::search_json(index->index, tokenize(query), and_mode ? SearchMode::And : SearchMode::Or,
                                  std::min(limit, kMaxResults), cfg));
  });
}

/* lexical signatures */

rl_status rl_signatures_json(const rl_corpus* corpus, const rl_index* index, const rl_config* config, size_t k,
                             char** out) {
  return guarded([&] {
    require(corpus && index && out, "corpus, index and out");
    const Config& cfg = config_or_default(config);
    const std::vector<size_t> lengths = k ? std::vector<size_t>{k} : cfg.ls_k;
    std::vector<LexicalSignature> sigs;
    for (const auto& doc : corpus->admitted) {
      for (size_t len : lengths) sigs.push_back(generate_ls(doc, index->index, len));
    }
    emit(out, report::signatures_json(sigs, cfg));
  });
}

/* title quality */

rl_status rl_stop_titles_default(rl_stop_titles** out) {
  return guarded([&] {
    require(out, "out");
    *out = new rl_stop_titles{StopTitleList::defaults()};
  });
}

rl_status rl_stop_titles_load(const char* path, rl_stop_titles** out) {
  return guarded([&] {
    require(path && out, "path and out");
    *out = new rl_stop_titles{StopTitleList::load(path)};
  });
}

rl_status rl_stop_titles_for_config(const rl_config* config, rl_stop_titles** out) {
  return guarded([&] {
    require(out, "out");
    const Config& cfg = config_or_default(config);
    *out = new rl_stop_titles{cfg.stop_title_path ? StopTitleList::load(*cfg.stop_title_path)
                                                  : StopTitleList::defaults()};
  });
}

rl_status rl_stop_titles_extend(rl_stop_titles* list, const char* path) {
  return guarded([&] {
    require(list && path, "list and path");
    list->list = list->list.extended(StopTitleList::load(path).phrases());
  });
}

void rl_stop_titles_free(rl_stop_titles* list) { delete list; }

rl_status rl_predict_title(const rl_stop_titles* list, const char* title, double threshold, rl_title_verdict* out) {
  return guarded([&] {
    require(list && title && out, "list, title and out");
    const TitleVerdict v = predict(TitleRecord::from_raw(title), list->list, threshold);
    *out = rl_title_verdict{v.predicted_good ? 1 : 0, to_c(v.rule), v.term_ratio, v.char_ratio, v.long_title ? 1 : 0};
  });
}

namespace {

report::KeyedVerdict judge(const StopTitleList& list, double threshold, std::string title,
                           std::optional<std::string> key) {
  report::KeyedVerdict kv;
  kv.key = std::move(key);
  const TitleRecord rec = TitleRecord::from_raw(title);
  kv.title = rec.raw;
  try {
    kv.verdict = predict(rec, list, threshold);
  } catch (const Error& e) {
    kv.error = e.what();
  }
  return kv;
}

}  // namespace

rl_status rl_quality_json(const rl_stop_titles* list, const rl_config* config, const char* const* titles,
                          const char* const* keys, size_t count, char** out) {
  return guarded([&] {
    require(list && out && (titles || count == 0), "list, titles and out");
    const Config& cfg = config_or_default(config);
    std::vector<report::KeyedVerdict> verdicts;
    for (size_t i = 0; i < count; ++i) {
      require(titles[i], "titles[i]");
      std::optional<std::string> key;
      if (keys && keys[i]) key = keys[i];
      verdicts.push_back(judge(list->list, cfg.quality_threshold, titles[i], key));
    }
    emit(out, report::verdicts_json(verdicts, cfg));
  });
}

rl_status rl_quality_corpus_json(const rl_stop_titles* list, const rl_corpus* corpus, const rl_config* config,
                                 char** out) {
  return guarded([&] {
    require(list && corpus && out, "list, corpus and out");
    const Config& cfg = config_or_default(config);
    std::vector<report::KeyedVerdict> verdicts;
    for (const auto& doc : corpus->admitted) {
      if (!doc.title) continue;
      verdicts.push_back(judge(list->list, cfg.quality_threshold, doc.title->raw, doc.uri));
    }
    emit(out, report::verdicts_json(verdicts, cfg));
  });
}

rl_status rl_confusion_eval(const char* verdicts_json, const char* outcomes_json, int intersect,
                            const rl_config* config, char** out_json, char** out_tsv) {
  return guarded([&] {
    require(verdicts_json && outcomes_json, "verdicts_json and outcomes_json");
    auto predictions = report::predictions_from_json(verdicts_json);
    auto actuals = report::actuals_from_json(outcomes_json);
    if (intersect) {
      std::erase_if(predictions, [&](const auto& kv) { return !actuals.count(kv.first); });
      std::erase_if(actuals, [&](const auto& kv) { return !predictions.count(kv.first); });
    }
    const ConfusionMatrix m = confusion(predictions, actuals);
    emit(out_json, report::confusion_json(m, config_or_default(config)));
    emit(out_tsv, report::confusion_tsv(m));
  });
}

rl_status rl_distill_stop_titles(const char* outcomes_json, size_t min_occurrences, char** out) {
  return guarded([&] {
    require(outcomes_json && out, "outcomes_json and out");
    std::ostringstream text;
    for (const auto& st : distill_stop_titles(report::title_outcomes_from_json(outcomes_json), min_occurrences)) {
      text << join_terms(st.phrase) << '\n';
    }
    emit(out, text.str());
  });
}

/* rediscovery */

namespace {

Evaluation run_strategy(const rl_corpus& corpus, const rl_index& index, const Config& cfg, const char* strategy) {
  const Strategy s = parse_strategy(strategy);
  if (corpus.admitted.empty()) throw Error(ErrorCode::EmptyCorpus, "corpus has no admitted documents");
  const LocalBackend backend(index.index, SearchMode::Or, [] { return Timestamp{}; });
  EvaluationOptions opts;
  opts.max_results = cfg.max_results;
  opts.discovered_depth = cfg.discovered_depth;
  return evaluate_corpus(corpus.admitted, backend, s, &index.index, opts);
}

}  // namespace

rl_status rl_rediscover(const rl_corpus* corpus, const rl_index* index, const rl_config* config,
                        const char* strategy, char** outcomes_json, char** summary_tsv) {
  return guarded([&] {
    require(corpus && index && strategy, "corpus, index and strategy");
    const Config& cfg = config_or_default(config);
    const Evaluation eval = run_strategy(*corpus, *index, cfg, strategy);
    emit(outcomes_json, report::outcomes_json(eval, cfg));
    emit(summary_tsv, report::summary_tsv(std::span<const Evaluation>(&eval, 1)));
  });
}

rl_status rl_relevance_csv(const rl_corpus* corpus, const rl_index* index, const rl_config* config,
                           const char* strategy, char** out) {
  return guarded([&] {
    require(corpus && index && strategy && out, "corpus, index, strategy and out");
    const Config& cfg = config_or_default(config);
    const Evaluation eval = run_strategy(*corpus, *index, cfg, strategy);
    emit(out, report::relevance_csv(tabulate_relevance(corpus->admitted, eval, cfg.discovered_depth, cfg.shingle_w)));
  });
}

/* archive */

rl_status rl_archive_put(const char* snapshot_dir, const char* uri, const char* timestamp, const char* html,
                         size_t len) {
  return guarded([&] {
    require(snapshot_dir && uri && timestamp && (html || len == 0), "snapshot_dir, uri, timestamp and html");
    SnapshotStore(snapshot_dir).put(uri, parse_timestamp(timestamp), std::string_view(html ? html : "", len));
  });
}

rl_status rl_archive_load(const char* snapshot_dir, const rl_corpus* baselines, rl_archive** out) {
  return guarded([&] {
    require(snapshot_dir && baselines && out, "snapshot_dir, baselines and out");
    auto loaded = SnapshotStore(snapshot_dir).load(baselines->corpus.documents);
    *out = new rl_archive{std::move(loaded.series)};
  });
}

void rl_archive_free(rl_archive* archive) { delete archive; }

size_t rl_archive_size(const rl_archive* archive) { return archive ? archive->series.size() : 0; }

rl_status rl_windows_json(const rl_config* config, char** out) {
  return guarded([&] {
    require(out, "out");
    const Config& cfg = config_or_default(config);
    nlohmann::json j;
    j["config"] = cfg;
    nlohmann::json list = nlohmann::json::array();
    for (const auto& w : make_windows(cfg.window_anchor, cfg.window_count)) {
      list.push_back({{"label", w.label}, {"start", format_timestamp(w.start)}, {"end", format_timestamp(w.end())}});
    }
    j["windows"] = list;
    emit(out, j.dump(2) + "\n");
  });
}

rl_status rl_evolve_csv(const rl_archive* archive, const rl_config* config, char** out) {
  return guarded([&] {
    require(archive && out, "archive and out");
    const Config& cfg = config_or_default(config);
    const auto windows = make_windows(cfg.window_anchor, cfg.window_count);
    emit(out, report::evolution_csv(title_evolution(archive->series, windows, cfg.minor_change_threshold)));
  });
}

rl_status rl_correlate_csv(const rl_archive* archive, const rl_config* config, char** out) {
  return guarded([&] {
    require(archive && out, "archive and out");
    const Config& cfg = config_or_default(config);
    const auto windows = make_windows(cfg.window_anchor, cfg.window_count);
    emit(out, report::grid_csv(title_vs_content(archive->series, windows, cfg.shingle_w)));
  });
}

}  // extern "C"
