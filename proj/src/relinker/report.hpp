#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "relinker/archive.hpp"
#include "relinker/config.hpp"
#include "relinker/corpus.hpp"
#include "relinker/index.hpp"
#include "relinker/quality.hpp"
#include "relinker/rediscovery.hpp"
#include "relinker/signatures.hpp"

// Machine-readable renderings of analysis results. Every JSON document
// carries the effective configuration under "config"; all output is a pure
// function of its inputs.
namespace relinker::report {

std::string ingest_json(const Corpus& corpus, const Config& config);
std::string titles_json(const Corpus& corpus, const Config& config);
std::string index_stats_json(const InvertedIndex& index, const Config& config);
std::string search_json(const InvertedIndex& index, const Terms& query, SearchMode mode, std::size_t max_results,
                        const Config& config);
std::string signatures_json(std::span<const LexicalSignature> signatures, const Config& config);

struct KeyedVerdict {
  std::optional<std::string> key;  // document URI when known
  std::string title;
  std::optional<TitleVerdict> verdict;
  std::optional<std::string> error;
};

std::string verdicts_json(std::span<const KeyedVerdict> verdicts, const Config& config);

std::string confusion_json(const ConfusionMatrix& m, const Config& config);
// 2×2 table, rows = predicted, columns = actual.
std::string confusion_tsv(const ConfusionMatrix& m);

std::string outcomes_json(const Evaluation& eval, const Config& config);
std::string summary_tsv(std::span<const Evaluation> evals);
std::string relevance_csv(const RelevanceTable& table);

std::string evolution_csv(const EvolutionReport& report);
std::string grid_csv(const CorrelationGrid& grid);

// Predictions keyed by "key" (verdict JSON) and discovered flags keyed by
// "uri" (outcome JSON). Records without a verdict or outcome are skipped.
std::map<std::string, bool> predictions_from_json(const std::string& verdicts_json);
std::map<std::string, bool> actuals_from_json(const std::string& outcomes_json);
std::vector<TitleOutcome> title_outcomes_from_json(const std::string& outcomes_json);

std::string format_fixed(double v, int decimals);

}  // namespace relinker::report
