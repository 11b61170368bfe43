#include "relinker/index.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <unordered_map>

#include "relinker/error.hpp"
#include "relinker/log.hpp"
#include "relinker/stopwords.hpp"
#include "relinker/uri.hpp"

namespace relinker {
namespace {

constexpr std::array<char, 8> kMagic = {'R', 'L', 'I', 'N', 'D', 'E', 'X', '\0'};
constexpr std::uint32_t kFormatVersion = 1;

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}

  void u32(std::uint32_t v) { raw(v, 4); }
  void u64(std::uint64_t v) { raw(v, 8); }
  void str(std::string_view s) {
    u32(static_cast<std::uint32_t>(s.size()));
    out_.write(s.data(), static_cast<std::streamsize>(s.size()));
  }

 private:
  void raw(std::uint64_t v, int bytes) {
    char buf[8];
    for (int i = 0; i < bytes; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
    out_.write(buf, bytes);
  }

  std::ostream& out_;
};

class Reader {
 public:
  Reader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

  std::uint32_t u32() { return static_cast<std::uint32_t>(raw(4)); }
  std::uint64_t u64() { return raw(8); }
  std::string str() {
    const std::uint32_t n = u32();
    std::string s(n, '\0');
    if (!in_.read(s.data(), n)) truncated();
    return s;
  }

 private:
  std::uint64_t raw(int bytes) {
    unsigned char buf[8];
    if (!in_.read(reinterpret_cast<char*>(buf), bytes)) truncated();
    std::uint64_t v = 0;
    for (int i = bytes - 1; i >= 0; --i) v = (v << 8) | buf[i];
    return v;
  }

  [[noreturn]] void truncated() { throw Error(ErrorCode::Parse, "index file '" + source_ + "' is truncated"); }

  std::istream& in_;
  std::string source_;
};

}  // namespace

InvertedIndex InvertedIndex::build(std::span<const PageDocument> docs) {
  if (docs.empty()) throw Error(ErrorCode::EmptyCorpus, "cannot build an index from an empty corpus");

  struct Keyed {
    std::string uri;
    const PageDocument* doc;
  };
  std::vector<Keyed> keyed;
  keyed.reserve(docs.size());
  for (const auto& d : docs) keyed.push_back({canonicalize_uri(d.uri), &d});
  std::sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
    if (a.uri != b.uri) return a.uri < b.uri;
    if (a.doc->id != b.doc->id) return a.doc->id < b.doc->id;
    return a.doc->fetched_at < b.doc->fetched_at;
  });

  InvertedIndex index;
  std::vector<const PageDocument*> kept;
  for (std::size_t i = 0; i < keyed.size(); ++i) {
    if (i + 1 < keyed.size() && keyed[i + 1].uri == keyed[i].uri) {
      log_warning("duplicate canonical URI " + keyed[i].uri + ": document '" + keyed[i].doc->id +
                  "' replaced by '" + keyed[i + 1].doc->id + "'");
      continue;
    }
    index.docs_.push_back({keyed[i].uri, keyed[i].doc->id, keyed[i].doc->terms.size()});
    kept.push_back(keyed[i].doc);
  }

  for (std::uint32_t id = 0; id < kept.size(); ++id) {
    std::unordered_map<std::string_view, std::uint32_t> counts;
    for (const auto& term : kept[id]->terms) ++counts[term];
    for (const auto& [term, count] : counts) {
      auto it = index.postings_.find(term);
      if (it == index.postings_.end()) it = index.postings_.emplace(std::string(term), std::vector<Posting>{}).first;
      it->second.push_back({id, count});
    }
  }
  return index;
}

std::uint64_t InvertedIndex::df(std::string_view term) const {
  const auto* list = postings(term);
  return list ? list->size() : 0;
}

std::uint64_t InvertedIndex::index_size() const { return estimate_.value_or(docs_.size()); }

void InvertedIndex::set_index_size_estimate(std::optional<std::uint64_t> estimate) {
  if (estimate && *estimate < 1) throw Error(ErrorCode::InvalidArgument, "index_size_estimate must be at least 1");
  estimate_ = estimate;
}

std::optional<std::uint32_t> InvertedIndex::find_doc(std::string_view canonical_uri) const {
  const auto it = std::lower_bound(docs_.begin(), docs_.end(), canonical_uri,
                                   [](const IndexedDoc& d, std::string_view uri) { return d.uri < uri; });
  if (it == docs_.end() || it->uri != canonical_uri) return std::nullopt;
  return static_cast<std::uint32_t>(it - docs_.begin());
}

const std::vector<Posting>* InvertedIndex::postings(std::string_view term) const {
  const auto it = postings_.find(term);
  return it == postings_.end() ? nullptr : &it->second;
}

std::uint64_t InvertedIndex::posting_count() const {
  std::uint64_t total = 0;
  for (const auto& [term, list] : postings_) total += list.size();
  return total;
}

Terms filter_query(const Terms& query) {
  Terms out;
  for (const auto& t : query) {
    if (!t.empty() && !is_stopword(t)) out.push_back(t);
  }
  return out;
}

std::vector<ScoredDoc> InvertedIndex::search(const Terms& query, std::size_t max_results, SearchMode mode) const {
  const Terms terms = filter_query(query);
  if (terms.empty()) throw Error(ErrorCode::EmptyQuery, "query is empty after stopword removal");

  const std::uint64_t n = index_size();
  std::vector<double> scores(docs_.size(), 0.0);
  std::vector<std::uint32_t> matched(docs_.size(), 0);
  // Distinct query terms for the AND test; duplicates still add to the score.
  Terms distinct = terms;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  for (const auto& term : terms) {
    const auto* list = postings(term);
    if (!list) continue;
    for (const Posting& p : *list) scores[p.doc] += tfidf_score(p.tf, list->size(), n);
  }
  for (const auto& term : distinct) {
    const auto* list = postings(term);
    if (!list) continue;
    for (const Posting& p : *list) ++matched[p.doc];
  }

  std::vector<ScoredDoc> hits;
  const std::uint32_t need = mode == SearchMode::And ? static_cast<std::uint32_t>(distinct.size()) : 1;
  for (std::uint32_t id = 0; id < docs_.size(); ++id) {
    if (matched[id] >= need) hits.push_back({id, scores[id]});
  }
  const auto better = [](const ScoredDoc& a, const ScoredDoc& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.doc < b.doc;
  };
  const std::size_t take = std::min(max_results, hits.size());
  std::partial_sort(hits.begin(), hits.begin() + static_cast<std::ptrdiff_t>(take), hits.end(), better);
  hits.resize(take);
  return hits;
}

void InvertedIndex::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write index '" + path.string() + "'");
  out.write(kMagic.data(), kMagic.size());
  Writer w(out);
  w.u32(kFormatVersion);
  w.u64(docs_.size());
  w.u64(estimate_.value_or(0));
  for (const auto& d : docs_) {
    w.str(d.uri);
    w.str(d.id);
    w.u64(d.term_count);
  }
  w.u64(postings_.size());
  for (const auto& [term, list] : postings_) {
    w.str(term);
    w.u32(static_cast<std::uint32_t>(list.size()));
    for (const Posting& p : list) {
      w.u32(p.doc);
      w.u32(p.tf);
    }
  }
  if (!out) throw Error(ErrorCode::Io, "failed writing index '" + path.string() + "'");
}

InvertedIndex InvertedIndex::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open index '" + path.string() + "'");
  std::array<char, 8> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
    throw Error(ErrorCode::Parse, "'" + path.string() + "' is not a relinker index");
  }
  Reader r(in, path.string());
  const std::uint32_t version = r.u32();
  if (version != kFormatVersion) {
    throw Error(ErrorCode::Parse, "unsupported index format version " + std::to_string(version));
  }
  InvertedIndex index;
  const std::uint64_t n = r.u64();
  const std::uint64_t estimate = r.u64();
  if (estimate) index.estimate_ = estimate;
  for (std::uint64_t i = 0; i < n; ++i) {
    IndexedDoc d;
    d.uri = r.str();
    d.id = r.str();
    d.term_count = r.u64();
    index.docs_.push_back(std::move(d));
  }
  const std::uint64_t vocab = r.u64();
  for (std::uint64_t i = 0; i < vocab; ++i) {
    std::string term = r.str();
    const std::uint32_t count = r.u32();
    std::vector<Posting> list(count);
    for (auto& p : list) {
      p.doc = r.u32();
      p.tf = r.u32();
      if (p.doc >= n) throw Error(ErrorCode::Parse, "posting references unknown document " + std::to_string(p.doc));
    }
    index.postings_.emplace(std::move(term), std::move(list));
  }
  return index;
}

LocalBackend::LocalBackend(const InvertedIndex& index, SearchMode mode, Clock clock)
    : index_(index), mode_(mode), clock_(std::move(clock)) {}

ResultList LocalBackend::search(const Terms& query, std::size_t max_results) const {
  ResultList results;
  results.query = query;
  results.issued_at = clock_ ? clock_()
                             : std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
  const auto hits = index_.search(query, std::min(max_results, kMaxResults), mode_);
  for (std::size_t i = 0; i < hits.size(); ++i) {
    const auto& d = index_.docs()[hits[i].doc];
    results.entries.push_back({i + 1, d.uri, hits[i].doc, hits[i].score});
  }
  return results;
}

}  // namespace relinker
