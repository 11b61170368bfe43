#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "relinker/corpus.hpp"
#include "relinker/search.hpp"
#include "relinker/signatures.hpp"

namespace relinker {

struct Posting {
  std::uint32_t doc = 0;
  std::uint32_t tf = 0;

  bool operator==(const Posting&) const = default;
};

struct IndexedDoc {
  std::string uri;  // canonical
  std::string id;
  std::uint64_t term_count = 0;

  bool operator==(const IndexedDoc&) const = default;
};

enum class SearchMode { Or, And };

struct ScoredDoc {
  std::uint32_t doc = 0;
  double score = 0.0;
};

// Term → postings over admitted documents. Document ids follow canonical
// URI order, so the index does not depend on input order. Immutable after
// build and safe to search concurrently.
class InvertedIndex : public DfProvider {
 public:
  // Throws Error(EmptyCorpus) for an empty input. Documents sharing a
  // canonical URI collapse to the last one in (uri, id, fetched_at) order,
  // with a warning.
  static InvertedIndex build(std::span<const PageDocument> docs);

  static InvertedIndex load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;

  std::uint64_t df(std::string_view term) const override;
  // Collection size used for IDF: the estimate when set, otherwise N.
  std::uint64_t index_size() const override;
  std::uint64_t doc_count() const { return docs_.size(); }

  void set_index_size_estimate(std::optional<std::uint64_t> estimate);
  std::optional<std::uint64_t> index_size_estimate() const { return estimate_; }

  const std::vector<IndexedDoc>& docs() const { return docs_; }
  std::optional<std::uint32_t> find_doc(std::string_view canonical_uri) const;
  // Null when the term is not indexed.
  const std::vector<Posting>* postings(std::string_view term) const;
  std::size_t vocabulary_size() const { return postings_.size(); }
  std::uint64_t posting_count() const;

  // Stopwords are dropped from the query first; throws Error(EmptyQuery)
  // if nothing remains. Scores are Σ tf·ln(N/df) over query terms; ties go
  // to the lower doc id.
  std::vector<ScoredDoc> search(const Terms& query, std::size_t max_results = kMaxResults,
                                SearchMode mode = SearchMode::Or) const;

  bool operator==(const InvertedIndex& other) const {
    return postings_ == other.postings_ && docs_ == other.docs_ && estimate_ == other.estimate_;
  }

 private:
  std::map<std::string, std::vector<Posting>, std::less<>> postings_;
  std::vector<IndexedDoc> docs_;
  std::optional<std::uint64_t> estimate_;
};

// Query terms with bundled stopwords removed.
Terms filter_query(const Terms& query);

class LocalBackend : public SearchBackend {
 public:
  using Clock = std::function<Timestamp()>;

  explicit LocalBackend(const InvertedIndex& index, SearchMode mode = SearchMode::Or, Clock clock = {});

  ResultList search(const Terms& query, std::size_t max_results) const override;

 private:
  const InvertedIndex& index_;
  SearchMode mode_;
  Clock clock_;
};

}  // namespace relinker
