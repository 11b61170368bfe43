#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "relinker/corpus.hpp"
#include "relinker/timestamp.hpp"

namespace relinker {

// Source of document frequencies and the collection size used for IDF.
// Implementations must tolerate concurrent lookups or say otherwise.
class DfProvider {
 public:
  virtual ~DfProvider() = default;
  // May throw ProviderError.
  virtual std::uint64_t df(std::string_view term) const = 0;
  virtual std::uint64_t index_size() const = 0;
};

struct LexicalSignature {
  std::string uri;
  std::size_t k = 0;
  Terms terms;                // best first, distinct
  std::vector<double> scores;  // parallel to terms, non-increasing
  Timestamp generated_at{};
};

std::size_t tf(const PageDocument& doc, std::string_view term);

// tf * ln(N / df) with df clamped to [1, N]. Throws Error(InvalidArgument)
// when N < 1.
double tfidf_score(std::uint64_t tf, std::uint64_t df, std::uint64_t n);

// Top-k non-stopword terms of the document ordered by (score desc, tf
// desc, term asc). generated_at is the document's fetch time, so the same
// input always yields the same signature.
LexicalSignature generate_ls(const PageDocument& doc, const DfProvider& provider, std::size_t k);

void to_json(nlohmann::json& j, const LexicalSignature& ls);
void from_json(const nlohmann::json& j, LexicalSignature& ls);

}  // namespace relinker
