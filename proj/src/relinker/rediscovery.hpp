#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "relinker/corpus.hpp"
#include "relinker/search.hpp"
#include "relinker/signatures.hpp"
#include "relinker/similarity.hpp"

namespace relinker {

enum class RankCategory { Top, Top10, Top100, Undiscovered };

const char* rank_category_name(RankCategory c);

inline constexpr std::size_t kDiscoveredDepth = 10;

struct RetrievalOutcome {
  RankCategory category = RankCategory::Undiscovered;
  std::optional<std::size_t> rank;  // present iff category != Undiscovered
  bool discovered = false;          // rank within the discovered depth
};

// First entry whose canonical URI equals the canonical target. Entries with
// malformed URIs never match.
RetrievalOutcome locate(std::string_view target_uri, const ResultList& results,
                        std::size_t discovered_depth = kDiscoveredDepth);

// Throws Error(InvalidArgument) on an empty title or signature.
Terms title_query(const TitleRecord& title);
Terms ls_query(const LexicalSignature& ls);

struct RankRelevance {
  std::size_t rank = 0;
  bool present = false;  // false when the rank is missing or its document unknown
  double overlap = 0.0;
  double shingle = 0.0;
  SimilarityClass overlap_class = SimilarityClass::None;
  SimilarityClass shingle_class = SimilarityClass::None;
};

struct ResultRelevance {
  std::vector<RankRelevance> ranks;  // ranks 1..depth
};

// Resolves a canonical URI to a local document, or null.
using DocumentLookup = std::function<const PageDocument*(std::string_view canonical_uri)>;

ResultRelevance relevance(const PageDocument& origin, const ResultList& results, const DocumentLookup& lookup,
                          std::size_t depth = kDiscoveredDepth, std::size_t shingle_w = 5);

enum class Strategy { Title, LS5, LS7 };

const char* strategy_name(Strategy s);
Strategy parse_strategy(std::string_view name);  // title | ls5 | ls7

struct EvaluationOptions {
  std::size_t max_results = kMaxResults;
  std::size_t discovered_depth = kDiscoveredDepth;
  // Worker threads for per-URI work; results do not depend on it.
  unsigned threads = 1;
};

struct UriOutcome {
  std::string uri;
  std::string id;
  Terms query;
  std::optional<std::string> title;
  std::optional<RetrievalOutcome> outcome;
  std::optional<ResultList> results;
  std::optional<std::string> error;  // backend or query failure
  bool skipped = false;              // Title strategy on a titleless page
};

struct Distribution {
  std::array<std::size_t, 4> counts{};  // indexed by RankCategory
  std::size_t evaluated = 0;
  std::size_t skipped = 0;
  std::size_t errors = 0;

  double fraction(RankCategory c) const;
};

struct Evaluation {
  Strategy strategy = Strategy::Title;
  std::vector<UriOutcome> outcomes;  // corpus order
  Distribution distribution;
};

// Queries every document with its title or signature. LS strategies need a
// DF provider. Failures on one URI are recorded, not thrown.
Evaluation evaluate_corpus(std::span<const PageDocument> corpus, const SearchBackend& backend, Strategy strategy,
                           const DfProvider* provider = nullptr, const EvaluationOptions& options = {});

// Counts of similarity classes by rank, split by discovered/undiscovered
// origin: [discovered][rank-1][class].
struct RelevanceTable {
  std::size_t depth = kDiscoveredDepth;
  std::vector<std::array<std::size_t, 5>> overlap[2];
  std::vector<std::array<std::size_t, 5>> shingle[2];

  explicit RelevanceTable(std::size_t depth = kDiscoveredDepth);
  void add(bool discovered, const ResultRelevance& rel);
};

RelevanceTable tabulate_relevance(std::span<const PageDocument> corpus, const Evaluation& evaluation,
                                  std::size_t depth = kDiscoveredDepth, std::size_t shingle_w = 5);

}  // namespace relinker
