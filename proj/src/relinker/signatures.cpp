#include "relinker/signatures.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <nlohmann/json.hpp>

#include "relinker/error.hpp"
#include "relinker/stopwords.hpp"

namespace relinker {

std::size_t tf(const PageDocument& doc, std::string_view term) {
  return static_cast<std::size_t>(std::count(doc.terms.begin(), doc.terms.end(), term));
}

double tfidf_score(std::uint64_t tf, std::uint64_t df, std::uint64_t n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "index size must be at least 1");
  if (tf == 0) return 0.0;
  df = std::clamp<std::uint64_t>(df, 1, n);
  if (df == n) return 0.0;
  return static_cast<double>(tf) * std::log(static_cast<double>(n) / static_cast<double>(df));
}

LexicalSignature generate_ls(const PageDocument& doc, const DfProvider& provider, std::size_t k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "signature length k must be at least 1");

  std::map<std::string_view, std::uint64_t> counts;
  for (const auto& term : doc.terms) {
    if (!is_stopword(term)) ++counts[term];
  }

  struct Candidate {
    std::string_view term;
    std::uint64_t tf;
    double score;
  };
  const std::uint64_t n = provider.index_size();
  std::vector<Candidate> candidates;
  candidates.reserve(counts.size());
  for (const auto& [term, count] : counts) {
    candidates.push_back({term, count, tfidf_score(count, provider.df(term), n)});
  }

  const auto better = [](const Candidate& a, const Candidate& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.tf != b.tf) return a.tf > b.tf;
    return a.term < b.term;
  };
  const std::size_t take = std::min(k, candidates.size());
  std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(take), candidates.end(),
                    better);

  LexicalSignature ls;
  ls.uri = doc.uri;
  ls.k = k;
  ls.generated_at = doc.fetched_at;
  for (std::size_t i = 0; i < take; ++i) {
    ls.terms.emplace_back(candidates[i].term);
    ls.scores.push_back(candidates[i].score);
  }
  return ls;
}

void to_json(nlohmann::json& j, const LexicalSignature& ls) {
  j = nlohmann::json{{"uri", ls.uri},
                     {"k", ls.k},
                     {"terms", ls.terms},
                     {"scores", ls.scores},
                     {"generated_at", format_timestamp(ls.generated_at)}};
}

void from_json(const nlohmann::json& j, LexicalSignature& ls) {
  ls.uri = j.at("uri").get<std::string>();
  ls.k = j.at("k").get<std::size_t>();
  ls.terms = j.at("terms").get<Terms>();
  ls.scores = j.at("scores").get<std::vector<double>>();
  ls.generated_at = parse_timestamp(j.at("generated_at").get<std::string>());
  if (ls.terms.size() != ls.scores.size()) {
    throw Error(ErrorCode::Parse, "signature terms and scores differ in length");
  }
}

}  // namespace relinker
