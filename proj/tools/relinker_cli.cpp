// relinker command-line front end. Talks to the library only through the C
// API in <relinker/relinker.h>.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "relinker/relinker.h"

namespace {

// Carries an rl_status out of a subcommand together with its context.
struct Failure {
  rl_status status;
  std::string message;
};

struct UsageFailure {
  std::string message;
};

void check(rl_status status, const std::string& context) {
  if (status != RL_OK) throw Failure{status, context + ": " + rl_last_error()};
}

// Owning wrappers for the opaque handles and library strings.
struct ConfigDeleter {
  void operator()(rl_config* p) const { rl_config_free(p); }
};
struct CorpusDeleter {
  void operator()(rl_corpus* p) const { rl_corpus_free(p); }
};
struct IndexDeleter {
  void operator()(rl_index* p) const { rl_index_free(p); }
};
struct StopTitlesDeleter {
  void operator()(rl_stop_titles* p) const { rl_stop_titles_free(p); }
};
struct ArchiveDeleter {
  void operator()(rl_archive* p) const { rl_archive_free(p); }
};
struct StringDeleter {
  void operator()(char* p) const { rl_free(p); }
};

using ConfigPtr = std::unique_ptr<rl_config, ConfigDeleter>;
using CorpusPtr = std::unique_ptr<rl_corpus, CorpusDeleter>;
using IndexPtr = std::unique_ptr<rl_index, IndexDeleter>;
using StopTitlesPtr = std::unique_ptr<rl_stop_titles, StopTitlesDeleter>;
using ArchivePtr = std::unique_ptr<rl_archive, ArchiveDeleter>;
using LibString = std::unique_ptr<char, StringDeleter>;

std::string take(char* s) {
  LibString owned(s);
  return owned ? std::string(owned.get()) : std::string();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Failure{RL_E_IO, "cannot write '" + path + "'"};
  out << content;
  if (!out) throw Failure{RL_E_IO, "failed writing '" + path + "'"};
}

std::string read_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{RL_E_IO, "cannot open '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void note(const std::string& line) { std::cerr << line << '\n'; }

// Flags that mirror config keys; only the ones given on the command line
// override the config file.
struct ConfigFlags {
  std::string config_path;
  std::vector<std::pair<std::string, std::string>> overrides;
  std::vector<std::string> sets;
};

ConfigPtr make_config(const ConfigFlags& flags) {
  rl_config* raw = nullptr;
  check(rl_config_new(&raw), "config");
  ConfigPtr config(raw);
  std::string path = flags.config_path;
  if (path.empty()) {
    if (const char* env = std::getenv("RELINKER_CONFIG")) path = env;
  }
  if (!path.empty()) check(rl_config_load(config.get(), path.c_str()), "config file " + path);
  for (const auto& kv : flags.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw UsageFailure{"--set expects key=value, got '" + kv + "'"};
    check(rl_config_set(config.get(), kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str()), "--set " + kv);
  }
  for (const auto& [key, value] : flags.overrides) {
    std::string flag = "--" + key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    check(rl_config_set(config.get(), key.c_str(), value.c_str()), flag);
  }
  char* resolved = nullptr;
  if (rl_config_json(config.get(), &resolved) != RL_OK) {
    throw Failure{RL_E_INVALID_ARGUMENT, rl_last_error()};
  }
  take(resolved);
  return config;
}

CorpusPtr load_corpus(const std::string& manifest, const rl_config* config) {
  rl_corpus* raw = nullptr;
  check(rl_corpus_load(manifest.c_str(), config, &raw), "manifest " + manifest);
  CorpusPtr corpus(raw);
  note("corpus: " + std::to_string(rl_corpus_size(corpus.get())) + " documents, " +
       std::to_string(rl_corpus_admitted(corpus.get())) + " admitted");
  return corpus;
}

IndexPtr obtain_index(const std::string& index_path, const rl_corpus* corpus, const rl_config* config) {
  rl_index* raw = nullptr;
  if (!index_path.empty()) {
    check(rl_index_load(index_path.c_str(), &raw), "index " + index_path);
  } else {
    check(rl_index_build(corpus, config, &raw), "index build");
  }
  return IndexPtr(raw);
}

StopTitlesPtr stop_titles_for(const rl_config* config, const std::string& extra_path) {
  rl_stop_titles* raw = nullptr;
  check(rl_stop_titles_for_config(config, &raw), "stop-title list");
  StopTitlesPtr list(raw);
  if (!extra_path.empty()) check(rl_stop_titles_extend(list.get(), extra_path.c_str()), "stop titles " + extra_path);
  return list;
}

int exit_code_for(rl_status status) {
  return status == RL_E_INVALID_ARGUMENT || status == RL_E_OUT_OF_RANGE ? 1 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"relinker: rediscover missing web pages from titles and lexical signatures"};
  app.require_subcommand(1);
  app.fallthrough();

  ConfigFlags flags;
  bool quiet = false;
  app.add_option("--config", flags.config_path, "Flat key = value config file (default: $RELINKER_CONFIG)");
  app.add_option("--set", flags.sets, "Override a config key, key=value (repeatable)");
  app.add_flag("-q,--quiet", quiet, "Suppress library warnings");

  // Config keys as flags.
  struct KeyFlag {
    const char* flag;
    const char* key;
    const char* help;
    std::string value;
  };
  std::vector<KeyFlag> key_flags = {
      {"--min-terms", "min_terms", "Minimum terms for admission", {}},
      {"--ls-k", "ls_k", "Signature lengths, comma separated", {}},
      {"--shingle-w", "shingle_w", "Shingle window in terms", {}},
      {"--quality-threshold", "quality_threshold", "Stop-title ratio threshold", {}},
      {"--minor-change-threshold", "minor_change_threshold", "Title distance counted as minor", {}},
      {"--max-results", "max_results", "Results requested per query (<= 100)", {}},
      {"--discovered-depth", "discovered_depth", "Rank depth counted as discovered", {}},
      {"--index-size-estimate", "index_size_estimate", "Collection size used for IDF", {}},
      {"--stop-title-path", "stop_title_path", "Stop-title list file", {}},
      {"--window-anchor", "window_anchor", "Newest time window, YYYY-02 or YYYY-08", {}},
      {"--window-count", "window_count", "Number of time windows", {}},
  };
  for (auto& kf : key_flags) app.add_option(kf.flag, kf.value, kf.help);

  std::string out_path;
  std::string manifest;
  std::string index_path;

  auto* ingest = app.add_subcommand("ingest", "Load a corpus manifest and report admission");
  ingest->add_option("--manifest", manifest, "JSON-lines corpus manifest")->required();
  ingest->add_option("--out", out_path, "Output file (default stdout)");

  auto* index = app.add_subcommand("index", "Build or inspect the local search index");
  index->require_subcommand(1);
  auto* index_build = index->add_subcommand("build", "Build an index file from a corpus");
  index_build->add_option("--manifest", manifest, "JSON-lines corpus manifest")->required();
  index_build->add_option("--out", out_path, "Index file to write")->required();
  auto* index_stats = index->add_subcommand("stats", "Summarize an index");
  auto* stats_index_opt = index_stats->add_option("--index", index_path, "Index file");
  index_stats->add_option("--manifest", manifest, "Build from this manifest instead")->excludes(stats_index_opt);
  index_stats->add_option("--out", out_path, "Output file (default stdout)");
  std::string search_query;
  bool search_and = false;
  auto* index_search = index->add_subcommand("search", "Run one query against an index");
  auto* search_index_opt = index_search->add_option("--index", index_path, "Index file");
  index_search->add_option("--manifest", manifest, "Build from this manifest instead")->excludes(search_index_opt);
  index_search->add_option("--query", search_query, "Query text")->required();
  index_search->add_flag("--and", search_and, "Conjunctive query");
  index_search->add_option("--out", out_path, "Output file (default stdout)");

  std::vector<std::string> html_files;
  auto* title = app.add_subcommand("title", "Extract page titles");
  auto* title_html_opt = title->add_option("--html", html_files, "HTML files");
  title->add_option("--manifest", manifest, "JSON-lines corpus manifest")->excludes(title_html_opt);
  title->add_option("--out", out_path, "Output file (default stdout)");

  std::size_t ls_k = 0;
  auto* lexsig = app.add_subcommand("lexsig", "Generate TF-IDF lexical signatures");
  lexsig->add_option("--manifest", manifest, "JSON-lines corpus manifest")->required();
  lexsig->add_option("--index", index_path, "DF source index (default: built from the corpus)");
  lexsig->add_option("--k", ls_k, "Signature length (default: every ls_k length)")->check(CLI::PositiveNumber);
  lexsig->add_option("--out", out_path, "Output file (default stdout)");

  std::vector<std::string> titles;
  std::string titles_file;
  std::string extra_stop_titles;
  auto* quality = app.add_subcommand("quality", "Predict title query quality");
  quality->add_option("--title", titles, "Title to judge (repeatable)");
  quality->add_option("--titles", titles_file, "File with one title per line");
  quality->add_option("--manifest", manifest, "Judge every admitted page title");
  quality->add_option("--stop-titles", extra_stop_titles, "Extra stop-title phrases to add to the list");
  quality->add_option("--out", out_path, "Output file (default stdout)");

  std::string verdicts_path, outcomes_path, tsv_path;
  bool intersect = false;
  const auto add_eval_options = [&](CLI::App* cmd) {
    cmd->add_option("--verdicts", verdicts_path, "Verdict JSON from `quality --manifest`")->required();
    cmd->add_option("--outcomes", outcomes_path, "Outcome JSON from `rediscover`")->required();
    cmd->add_flag("--intersect", intersect, "Use only keys present on both sides");
    cmd->add_option("--out", out_path, "Confusion matrix JSON (default stdout)");
    cmd->add_option("--tsv", tsv_path, "Also write the 2x2 table as TSV");
  };
  auto* quality_eval = quality->add_subcommand("eval", "Confusion matrix of verdicts against outcomes");
  add_eval_options(quality_eval);
  auto* eval = app.add_subcommand("eval", "Same as `quality eval`");
  add_eval_options(eval);

  std::size_t min_count = 2;
  auto* quality_distill = quality->add_subcommand("distill", "Distill stop titles from title-query outcomes");
  quality_distill->add_option("--outcomes", outcomes_path, "Outcome JSON from `rediscover --strategy title`")
      ->required();
  quality_distill->add_option("--min-count", min_count, "Minimum occurrences of a failing title");
  quality_distill->add_option("--out", out_path, "Stop-title list file (default stdout)");

  std::string sim_a, sim_b, metric = "all";
  bool sim_html = false;
  auto* sim = app.add_subcommand("sim", "Similarity between two files");
  sim->add_option("--a", sim_a, "First file")->required();
  sim->add_option("--b", sim_b, "Second file")->required();
  sim->add_option("--metric", metric, "levenshtein | overlap | shingle | all")
      ->check(CLI::IsMember({"levenshtein", "overlap", "shingle", "all"}));
  sim->add_flag("--html", sim_html, "Parse inputs as HTML");
  sim->add_option("--out", out_path, "Output file (default stdout)");

  std::string strategy = "title", backend = "local", summary_path;
  const auto add_strategy = [&](CLI::App* cmd) {
    cmd->add_option("--manifest", manifest, "JSON-lines corpus manifest")->required();
    cmd->add_option("--strategy", strategy, "title | ls5 | ls7")->check(CLI::IsMember({"title", "ls5", "ls7"}));
    cmd->add_option("--backend", backend, "Search backend")->check(CLI::IsMember({"local"}));
    cmd->add_option("--index", index_path, "Prebuilt index file (default: built from the corpus)");
  };
  auto* rediscover = app.add_subcommand("rediscover", "Query titles or signatures and locate each page");
  add_strategy(rediscover);
  rediscover->add_option("--out", out_path, "Per-URI outcome JSON (default stdout)");
  rediscover->add_option("--summary", summary_path, "Summary TSV of the four rank categories");

  auto* relevance = app.add_subcommand("relevance", "Similarity classes of the top results by rank (CSV)");
  add_strategy(relevance);
  relevance->add_option("--out", out_path, "Output CSV (default stdout)");

  std::string snapshots;
  const auto add_archive = [&](CLI::App* cmd) {
    cmd->add_option("--snapshots", snapshots, "Snapshot store directory")->required();
    cmd->add_option("--manifest", manifest, "Corpus manifest providing the baselines")->required();
    cmd->add_option("--out", out_path, "Output CSV (default stdout)");
  };
  auto* evolve = app.add_subcommand("evolve", "Title edit distance per time window (CSV)");
  add_archive(evolve);
  auto* correlate = app.add_subcommand("correlate", "Title change against content change grid (CSV)");
  add_archive(correlate);

  auto* show_config = app.add_subcommand("config", "Print the effective configuration");
  show_config->add_option("--out", out_path, "Output file (default stdout)");
  auto* windows = app.add_subcommand("windows", "Print the time windows");
  windows->add_option("--out", out_path, "Output file (default stdout)");

  std::string put_uri, put_timestamp, put_html;
  auto* archive = app.add_subcommand("archive", "Manage the snapshot store");
  archive->require_subcommand(1);
  auto* archive_put = archive->add_subcommand("put", "Store one archived copy of a page");
  archive_put->add_option("--snapshots", snapshots, "Snapshot store directory")->required();
  archive_put->add_option("--uri", put_uri, "Page URI")->required();
  archive_put->add_option("--timestamp", put_timestamp, "Capture time, ISO 8601")->required();
  archive_put->add_option("--html", put_html, "Archived HTML file")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  if (quiet) rl_set_log_level(RL_LOG_OFF);
  for (const auto& kf : key_flags) {
    if (!kf.value.empty()) flags.overrides.emplace_back(kf.key, kf.value);
  }

  try {
    ConfigPtr config = make_config(flags);
    const rl_config* cfg = config.get();
    char* text = nullptr;

    if (*show_config) {
      check(rl_config_json(cfg, &text), "config");
      write_output(out_path, take(text));
    } else if (*windows) {
      check(rl_windows_json(cfg, &text), "windows");
      write_output(out_path, take(text));
    } else if (*archive_put) {
      const std::string html = read_input(put_html);
      check(rl_archive_put(snapshots.c_str(), put_uri.c_str(), put_timestamp.c_str(), html.data(), html.size()),
            "archive put");
    } else if (*ingest) {
      auto corpus = load_corpus(manifest, cfg);
      check(rl_corpus_report_json(corpus.get(), cfg, &text), "ingest");
      write_output(out_path, take(text));
    } else if (*index_build) {
      auto corpus = load_corpus(manifest, cfg);
      auto idx = obtain_index("", corpus.get(), cfg);
      check(rl_index_save(idx.get(), out_path.c_str()), "index save");
      check(rl_index_stats_json(idx.get(), cfg, &text), "index stats");
      std::cerr << take(text);
    } else if (*index_stats || *index_search) {
      if (index_path.empty() && manifest.empty()) throw UsageFailure{"give --index or --manifest"};
      CorpusPtr corpus;
      if (index_path.empty()) corpus = load_corpus(manifest, cfg);
      auto idx = obtain_index(index_path, corpus.get(), cfg);
      if (*index_stats) {
        check(rl_index_stats_json(idx.get(), cfg, &text), "index stats");
      } else {
        check(rl_index_search_json(idx.get(), search_query.c_str(), search_and ? 1 : 0, 0, cfg, &text), "search");
      }
      write_output(out_path, take(text));
    } else if (*title) {
      if (html_files.empty() && manifest.empty()) throw UsageFailure{"give --html files or --manifest"};
      if (!manifest.empty()) {
        auto corpus = load_corpus(manifest, cfg);
        check(rl_corpus_titles_json(corpus.get(), cfg, &text), "titles");
        write_output(out_path, take(text));
      } else {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& file : html_files) {
          const std::string html = read_input(file);
          check(rl_extract_title(html.data(), html.size(), &text), file);
          const bool has_title = text != nullptr;
          const std::string t = take(text);
          rows.push_back({{"file", file}, {"title", has_title ? nlohmann::json(t) : nlohmann::json()}});
        }
        write_output(out_path, nlohmann::json{{"titles", rows}}.dump(2) + "\n");
      }
    } else if (*lexsig) {
      auto corpus = load_corpus(manifest, cfg);
      auto idx = obtain_index(index_path, corpus.get(), cfg);
      check(rl_signatures_json(corpus.get(), idx.get(), cfg, ls_k, &text), "lexsig");
      write_output(out_path, take(text));
    } else if (*quality_eval || *eval) {
      const std::string verdicts = read_input(verdicts_path);
      const std::string outcomes = read_input(outcomes_path);
      char* tsv = nullptr;
      check(rl_confusion_eval(verdicts.c_str(), outcomes.c_str(), intersect ? 1 : 0, cfg, &text, &tsv), "eval");
      const std::string tsv_text = take(tsv);
      write_output(out_path, take(text));
      if (!tsv_path.empty()) write_output(tsv_path, tsv_text);
      std::cerr << tsv_text;
    } else if (*quality_distill) {
      const std::string outcomes = read_input(outcomes_path);
      check(rl_distill_stop_titles(outcomes.c_str(), min_count, &text), "distill");
      write_output(out_path, take(text));
    } else if (*quality) {
      auto list = stop_titles_for(cfg, extra_stop_titles);
      if (!manifest.empty()) {
        if (!titles.empty() || !titles_file.empty()) throw UsageFailure{"--manifest excludes --title/--titles"};
        auto corpus = load_corpus(manifest, cfg);
        check(rl_quality_corpus_json(list.get(), corpus.get(), cfg, &text), "quality");
      } else {
        std::vector<std::string> all = titles;
        if (!titles_file.empty()) {
          std::istringstream lines(read_input(titles_file));
          std::string line;
          while (std::getline(lines, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.find_first_not_of(" \t") != std::string::npos) all.push_back(line);
          }
        }
        if (all.empty()) throw UsageFailure{"give --title, --titles or --manifest"};
        std::vector<const char*> ptrs;
        for (const auto& t : all) ptrs.push_back(t.c_str());
        check(rl_quality_json(list.get(), cfg, ptrs.data(), nullptr, ptrs.size(), &text), "quality");
      }
      write_output(out_path, take(text));
    } else if (*sim) {
      check(rl_sim_files(sim_a.c_str(), sim_b.c_str(), metric.c_str(), sim_html ? 1 : 0, cfg, &text), "sim");
      write_output(out_path, take(text));
    } else if (*rediscover) {
      auto corpus = load_corpus(manifest, cfg);
      auto idx = obtain_index(index_path, corpus.get(), cfg);
      char* summary = nullptr;
      check(rl_rediscover(corpus.get(), idx.get(), cfg, strategy.c_str(), &text, &summary), "rediscover");
      const std::string summary_text = take(summary);
      write_output(out_path, take(text));
      if (!summary_path.empty()) write_output(summary_path, summary_text);
      std::cerr << summary_text;
    } else if (*relevance) {
      auto corpus = load_corpus(manifest, cfg);
      auto idx = obtain_index(index_path, corpus.get(), cfg);
      check(rl_relevance_csv(corpus.get(), idx.get(), cfg, strategy.c_str(), &text), "relevance");
      write_output(out_path, take(text));
    } else if (*evolve || *correlate) {
      auto corpus = load_corpus(manifest, cfg);
      rl_archive* raw = nullptr;
      check(rl_archive_load(snapshots.c_str(), corpus.get(), &raw), "snapshots " + snapshots);
      ArchivePtr archive(raw);
      note("archive: " + std::to_string(rl_archive_size(archive.get())) + " URIs with baselines");
      if (*evolve) {
        check(rl_evolve_csv(archive.get(), cfg, &text), "evolve");
      } else {
        check(rl_correlate_csv(archive.get(), cfg, &text), "correlate");
      }
      write_output(out_path, take(text));
    }
  } catch (const UsageFailure& f) {
    std::cerr << "relinker: usage error: " << f.message << '\n';
    return 1;
  } catch (const Failure& f) {
    std::cerr << "relinker: " << rl_status_name(f.status) << ": " << f.message << '\n';
    return exit_code_for(f.status);
  }
  return 0;
}
