#include "relinker/rediscovery.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <thread>

#include "relinker/error.hpp"
#include "relinker/uri.hpp"

namespace relinker {

const char* rank_category_name(RankCategory c) {
  switch (c) {
    case RankCategory::Top: return "Top";
    case RankCategory::Top10: return "Top10";
    case RankCategory::Top100: return "Top100";
    case RankCategory::Undiscovered: return "Undiscovered";
  }
  return "";
}

RetrievalOutcome locate(std::string_view target_uri, const ResultList& results, std::size_t discovered_depth) {
  const std::string target = canonicalize_uri(target_uri);
  RetrievalOutcome out;
  for (const auto& e : results.entries) {
    std::string candidate;
    try {
      candidate = canonicalize_uri(e.uri);
    } catch (const Error&) {
      continue;
    }
    if (candidate != target) continue;
    if (e.rank > kMaxResults) break;
    out.rank = e.rank;
    if (e.rank == 1) {
      out.category = RankCategory::Top;
    } else if (e.rank <= 10) {
      out.category = RankCategory::Top10;
    } else {
      out.category = RankCategory::Top100;
    }
    out.discovered = e.rank <= discovered_depth;
    return out;
  }
  return out;
}

Terms title_query(const TitleRecord& title) {
  if (title.terms.empty()) throw Error(ErrorCode::InvalidArgument, "cannot query an empty title");
  return title.terms;
}

Terms ls_query(const LexicalSignature& ls) {
  if (ls.terms.empty()) throw Error(ErrorCode::InvalidArgument, "cannot query an empty lexical signature");
  return ls.terms;
}

ResultRelevance relevance(const PageDocument& origin, const ResultList& results, const DocumentLookup& lookup,
                          std::size_t depth, std::size_t shingle_w) {
  const ShingleSet origin_shingles(origin.terms, shingle_w);
  ResultRelevance rel;
  rel.ranks.resize(depth);
  for (std::size_t r = 0; r < depth; ++r) rel.ranks[r].rank = r + 1;

  for (const auto& e : results.entries) {
    if (e.rank < 1 || e.rank > depth) continue;
    const PageDocument* doc = nullptr;
    try {
      doc = lookup ? lookup(canonicalize_uri(e.uri)) : nullptr;
    } catch (const Error&) {
      doc = nullptr;
    }
    if (!doc) continue;
    auto& slot = rel.ranks[e.rank - 1];
    slot.present = true;
    slot.overlap = term_overlap(origin.terms, doc->terms);
    slot.shingle = resemblance(origin_shingles, ShingleSet(doc->terms, shingle_w));
    slot.overlap_class = classify(slot.overlap);
    slot.shingle_class = classify(slot.shingle);
  }
  return rel;
}

const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::Title: return "title";
    case Strategy::LS5: return "ls5";
    case Strategy::LS7: return "ls7";
  }
  return "";
}

Strategy parse_strategy(std::string_view name) {
  if (name == "title") return Strategy::Title;
  if (name == "ls5") return Strategy::LS5;
  if (name == "ls7") return Strategy::LS7;
  throw Error(ErrorCode::InvalidArgument, "unknown strategy '" + std::string(name) + "' (title, ls5, ls7)");
}

double Distribution::fraction(RankCategory c) const {
  if (evaluated == 0) return 0.0;
  return static_cast<double>(counts[static_cast<std::size_t>(c)]) / static_cast<double>(evaluated);
}

namespace {

UriOutcome evaluate_one(const PageDocument& doc, const SearchBackend& backend, Strategy strategy,
                        const DfProvider* provider, const EvaluationOptions& options) {
  UriOutcome out;
  out.uri = doc.uri;
  out.id = doc.id;
  if (doc.title) out.title = doc.title->raw;
  try {
    if (strategy == Strategy::Title) {
      if (!doc.title) {
        out.skipped = true;
        return out;
      }
      out.query = title_query(*doc.title);
    } else {
      if (!provider) throw Error(ErrorCode::InvalidArgument, "lexical signature strategies need a DF provider");
      out.query = ls_query(generate_ls(doc, *provider, strategy == Strategy::LS5 ? 5 : 7));
    }
    ResultList results = backend.search(out.query, options.max_results);
    out.outcome = locate(doc.uri, results, options.discovered_depth);
    out.results = std::move(results);
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  return out;
}

}  // namespace

Evaluation evaluate_corpus(std::span<const PageDocument> corpus, const SearchBackend& backend, Strategy strategy,
                           const DfProvider* provider, const EvaluationOptions& options) {
  Evaluation eval;
  eval.strategy = strategy;
  eval.outcomes.resize(corpus.size());

  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(corpus.size())));
  if (threads == 1) {
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      eval.outcomes[i] = evaluate_one(corpus[i], backend, strategy, provider, options);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> workers;
    for (unsigned t = 0; t < threads; ++t) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < corpus.size(); i = next++) {
          eval.outcomes[i] = evaluate_one(corpus[i], backend, strategy, provider, options);
        }
      });
    }
  }

  for (const auto& o : eval.outcomes) {
    if (o.skipped) {
      ++eval.distribution.skipped;
    } else if (o.error) {
      ++eval.distribution.errors;
    } else {
      ++eval.distribution.evaluated;
      ++eval.distribution.counts[static_cast<std::size_t>(o.outcome->category)];
    }
  }
  return eval;
}

RelevanceTable::RelevanceTable(std::size_t d) : depth(d) {
  for (int g = 0; g < 2; ++g) {
    overlap[g].assign(depth, {});
    shingle[g].assign(depth, {});
  }
}

void RelevanceTable::add(bool discovered, const ResultRelevance& rel) {
  const int g = discovered ? 1 : 0;
  for (const auto& r : rel.ranks) {
    if (!r.present || r.rank < 1 || r.rank > depth) continue;
    ++overlap[g][r.rank - 1][static_cast<std::size_t>(r.overlap_class)];
    ++shingle[g][r.rank - 1][static_cast<std::size_t>(r.shingle_class)];
  }
}

RelevanceTable tabulate_relevance(std::span<const PageDocument> corpus, const Evaluation& evaluation,
                                  std::size_t depth, std::size_t shingle_w) {
  std::map<std::string, const PageDocument*, std::less<>> by_uri;
  for (const auto& d : corpus) by_uri[canonicalize_uri(d.uri)] = &d;
  const DocumentLookup lookup = [&](std::string_view uri) -> const PageDocument* {
    const auto it = by_uri.find(uri);
    return it == by_uri.end() ? nullptr : it->second;
  };

  RelevanceTable table(depth);
  for (const auto& o : evaluation.outcomes) {
    if (!o.outcome || !o.results) continue;
    const PageDocument* origin = lookup(canonicalize_uri(o.uri));
    if (!origin) continue;
    table.add(o.outcome->discovered, relevance(*origin, *o.results, lookup, depth, shingle_w));
  }
  return table;
}

}  // namespace relinker
