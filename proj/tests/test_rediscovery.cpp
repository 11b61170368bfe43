#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "relinker/corpus.hpp"
#include "relinker/error.hpp"
#include "relinker/index.hpp"
#include "relinker/rediscovery.hpp"
#include "relinker/uri.hpp"
#include "synth.hpp"

using namespace relinker;

namespace {

ResultList results_of(std::vector<std::string> uris) {
  ResultList r;
  for (std::size_t i = 0; i < uris.size(); ++i) r.entries.push_back({i + 1, uris[i], std::nullopt, 0.0});
  return r;
}

std::vector<std::string> filler_uris(std::size_t n) {
  std::vector<std::string> uris;
  for (std::size_t i = 0; i < n; ++i) uris.push_back("http://other" + std::to_string(i) + ".example.org/");
  return uris;
}

PageDocument text_doc(const std::string& id, const std::string& uri, const std::vector<std::string>& words) {
  return make_document(id, uri, {}, synth::page_html("", words));
}

class FailingBackend : public SearchBackend {
 public:
  ResultList search(const Terms&, std::size_t) const override { throw ProviderError("backend offline"); }
};

}  // namespace

TEST(Canonicalize, Examples) {
  EXPECT_EQ(canonicalize_uri("http://www.globalrei.com/photos.php?property_ID=70694"),
            "http://www.globalrei.com/photos.php");
  EXPECT_EQ(canonicalize_uri("HTTP://Example.COM:80/a"), "http://example.com/a");
  EXPECT_EQ(canonicalize_uri("http://example.com/a"), "http://example.com/a");
  EXPECT_EQ(canonicalize_uri("https://Example.com:443/Path/#frag"), "https://example.com/Path/");
  EXPECT_EQ(canonicalize_uri("http://example.com:8080/x"), "http://example.com:8080/x");
  // no trailing-slash normalization
  EXPECT_NE(canonicalize_uri("http://example.com/a/"), canonicalize_uri("http://example.com/a"));
}

TEST(Canonicalize, MalformedRejected) {
  for (const char* bad : {"", "example.com/a", "http:/example.com", "://x", "http://", "http://host:port/"}) {
    try {
      canonicalize_uri(bad);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::MalformedUri) << bad;
    }
  }
}

TEST(Canonicalize, Idempotent) {
  const char* schemes[] = {"http", "HTTP", "https", "Https"};
  const char* hosts[] = {"Example.COM", "www.site.org", "[::1]", "user@Host.net"};
  const char* ports[] = {"", ":80", ":443", ":8080", ":"};
  const char* paths[] = {"", "/", "/A/b", "/x.php?id=3", "/p#frag", "/q?x=1#y"};
  for (auto s : schemes)
    for (auto h : hosts)
      for (auto p : ports)
        for (auto path : paths) {
          const std::string uri = std::string(s) + "://" + h + p + path;
          const auto once = canonicalize_uri(uri);
          EXPECT_EQ(canonicalize_uri(once), once) << uri;
        }
}

TEST(Locate, Categories) {
  const std::string target = "http://target.example.org/page";
  auto uris = filler_uris(120);

  uris[0] = target;
  auto top = locate(target, results_of(uris));
  EXPECT_EQ(top.category, RankCategory::Top);
  EXPECT_TRUE(top.discovered);
  EXPECT_EQ(top.rank, 1u);

  uris = filler_uris(120);
  uris[4] = target;
  auto top10 = locate(target, results_of(uris));
  EXPECT_EQ(top10.category, RankCategory::Top10);
  EXPECT_TRUE(top10.discovered);

  uris = filler_uris(120);
  uris[10] = target;
  auto rank11 = locate(target, results_of(uris));
  EXPECT_EQ(rank11.category, RankCategory::Top100);
  EXPECT_EQ(rank11.rank, 11u);
  EXPECT_FALSE(rank11.discovered);

  auto absent = locate(target, results_of(filler_uris(100)));
  EXPECT_EQ(absent.category, RankCategory::Undiscovered);
  EXPECT_FALSE(absent.rank);
  EXPECT_FALSE(absent.discovered);

  uris = filler_uris(120);
  uris[105] = target;  // beyond the top 100
  EXPECT_EQ(locate(target, results_of(uris)).category, RankCategory::Undiscovered);
}

TEST(Locate, IgnoresQueryParametersAndBadEntries) {
  auto uris = filler_uris(20);
  uris[2] = "not a uri";
  uris[6] = "http://Target.example.org:80/page?session=42";
  const auto a = locate("http://target.example.org/page", results_of(uris));
  const auto b = locate("http://target.example.org/page?x=1", results_of(uris));
  EXPECT_EQ(a.rank, 7u);
  EXPECT_EQ(a.rank, b.rank);
  EXPECT_EQ(a.category, b.category);
}

TEST(Locate, SuccessNesting) {
  std::mt19937 rng(6);
  for (int round = 0; round < 300; ++round) {
    auto uris = filler_uris(100);
    const std::size_t at = rng() % 130;
    if (at < uris.size()) uris[at] = "http://t.example.org/";
    const auto o = locate("http://t.example.org/", results_of(uris));
    const bool s1 = o.rank && *o.rank <= 1, s10 = o.rank && *o.rank <= 10, s100 = o.rank && *o.rank <= 100;
    EXPECT_TRUE(!s1 || s10);
    EXPECT_TRUE(!s10 || s100);
    EXPECT_EQ(o.discovered, o.category == RankCategory::Top || o.category == RankCategory::Top10);
    EXPECT_EQ(o.rank.has_value(), o.category != RankCategory::Undiscovered);
  }
}

TEST(Queries, FromTitleAndSignature) {
  EXPECT_EQ(title_query(TitleRecord::from_raw("Home")), (Terms{"home"}));
  LexicalSignature ls;
  ls.terms = {"vertical", "radio", "god", "knmi", "station"};
  EXPECT_EQ(ls_query(ls), ls.terms);
  EXPECT_THROW(title_query(TitleRecord::from_raw("")), Error);
  EXPECT_THROW(ls_query(LexicalSignature{}), Error);
}

TEST(Relevance, IdenticalDisjointAndMissing) {
  const auto origin = text_doc("o", "http://origin.example.org/", {"a", "b", "c", "d", "e", "f"});
  const auto twin = text_doc("t", "http://twin.example.org/", {"a", "b", "c", "d", "e", "f"});
  const auto other = text_doc("x", "http://other.example.org/", {"u", "v", "w", "x", "y", "z"});
  const DocumentLookup lookup = [&](std::string_view uri) -> const PageDocument* {
    if (uri == "http://twin.example.org/") return &twin;
    if (uri == "http://other.example.org/") return &other;
    return nullptr;
  };
  const auto rel = relevance(origin, results_of({"http://twin.example.org/", "http://other.example.org/",
                                                 "http://gone.example.org/"}),
                             lookup);
  ASSERT_EQ(rel.ranks.size(), 10u);
  EXPECT_TRUE(rel.ranks[0].present);
  EXPECT_EQ(rel.ranks[0].overlap, 1.0);
  EXPECT_EQ(rel.ranks[0].shingle, 1.0);
  EXPECT_EQ(rel.ranks[0].overlap_class, SimilarityClass::Exact);
  EXPECT_EQ(rel.ranks[0].shingle_class, SimilarityClass::Exact);
  EXPECT_EQ(rel.ranks[1].overlap, 0.0);
  EXPECT_EQ(rel.ranks[1].shingle_class, SimilarityClass::None);
  EXPECT_FALSE(rel.ranks[2].present);  // unfetchable: absent, not fatal
  EXPECT_FALSE(rel.ranks[9].present);
}

TEST(Relevance, AliasAtTopOfUndiscoveredOrigin) {
  // Same content under another URI at rank 1; the origin itself is at rank 12.
  std::vector<std::string> body;
  for (std::size_t i = 0; i < 60; ++i) body.push_back(i % 4 ? synth::word(i) : "the");
  std::vector<PageDocument> corpus;
  corpus.push_back(make_document("origin", "http://origin.example.org/", {}, synth::page_html("Qbababa", body)));
  corpus.push_back(make_document("alias", "http://mirror.example.net/", {}, synth::page_html("Qbababa", body)));

  auto uris = filler_uris(15);
  uris[0] = "http://mirror.example.net/";
  uris[11] = "http://origin.example.org/";
  Evaluation eval;
  UriOutcome o;
  o.uri = corpus[0].uri;
  o.results = results_of(uris);
  o.outcome = locate(o.uri, *o.results);
  eval.outcomes.push_back(o);
  ASSERT_FALSE(o.outcome->discovered);

  const auto table = tabulate_relevance(corpus, eval);
  const auto exact = static_cast<std::size_t>(SimilarityClass::Exact);
  EXPECT_EQ(table.shingle[0][0][exact], 1u);
  EXPECT_EQ(table.overlap[0][0][exact], 1u);
  // ranks 2-10 point at documents outside the corpus
  for (std::size_t r = 1; r < 10; ++r) {
    std::size_t n = 0;
    for (auto c : table.shingle[0][r]) n += c;
    EXPECT_EQ(n, 0u);
  }
  for (const auto& row : table.shingle[1]) {
    for (auto c : row) EXPECT_EQ(c, 0u);
  }
}

TEST(Evaluate, UniqueTitlesAllTop) {
  const auto g = synth::corpus({.unique_pages = 80, .template_pages = 6});
  const auto index = InvertedIndex::build(g.docs);
  const LocalBackend backend(index);
  const auto eval = evaluate_corpus(g.docs, backend, Strategy::Title);
  EXPECT_EQ(eval.distribution.evaluated, 80u);
  EXPECT_EQ(eval.distribution.fraction(RankCategory::Top), 1.0);
}

TEST(Evaluate, FixtureCorpusHandDerived) {
  // Query "welcome to my new website" keeps welcome, new, website (df 15 each of N = 20).
  // The ten template pages carry each term 4 times, the colliding pages once, so
  // templates hold ranks 1-10 and the five colliding pages ranks 11-15.
  const auto corpus = load_corpus(RELINKER_FIXTURES "/corpus20/manifest.jsonl");
  const auto docs = corpus.admitted();
  const auto index = InvertedIndex::build(docs);
  const LocalBackend backend(index);
  const auto eval = evaluate_corpus(docs, backend, Strategy::Title);
  EXPECT_EQ(eval.distribution.evaluated, 20u);
  EXPECT_EQ(eval.distribution.counts[0], 15u);
  EXPECT_EQ(eval.distribution.counts[1], 0u);
  EXPECT_EQ(eval.distribution.counts[2], 5u);
  EXPECT_EQ(eval.distribution.counts[3], 0u);
  std::vector<std::size_t> colliding_ranks;
  for (const auto& o : eval.outcomes) {
    if (o.id[0] == 'w') colliding_ranks.push_back(*o.outcome->rank);
    else EXPECT_EQ(o.outcome->category, RankCategory::Top) << o.id;
  }
  std::sort(colliding_ranks.begin(), colliding_ranks.end());
  EXPECT_EQ(colliding_ranks, (std::vector<std::size_t>{11, 12, 13, 14, 15}));

  double sum = 0.0;
  for (int c = 0; c < 4; ++c) sum += eval.distribution.fraction(static_cast<RankCategory>(c));
  EXPECT_DOUBLE_EQ(sum, 1.0);
}

TEST(Evaluate, ThreadCountDoesNotMatter) {
  const auto g = synth::corpus({.unique_pages = 50, .template_pages = 10, .colliding_pages = 5});
  const auto index = InvertedIndex::build(g.docs);
  const LocalBackend backend(index);
  for (auto strategy : {Strategy::Title, Strategy::LS5}) {
    const auto serial = evaluate_corpus(g.docs, backend, strategy, &index, {.threads = 1});
    const auto parallel = evaluate_corpus(g.docs, backend, strategy, &index, {.threads = 4});
    ASSERT_EQ(serial.outcomes.size(), parallel.outcomes.size());
    for (std::size_t i = 0; i < serial.outcomes.size(); ++i) {
      EXPECT_EQ(serial.outcomes[i].query, parallel.outcomes[i].query);
      EXPECT_EQ(serial.outcomes[i].outcome->rank, parallel.outcomes[i].outcome->rank);
    }
    EXPECT_EQ(serial.distribution.counts, parallel.distribution.counts);
  }
}

TEST(Evaluate, BackendFailureIsRecorded) {
  const auto g = synth::corpus({.unique_pages = 5, .template_pages = 0});
  const auto eval = evaluate_corpus(g.docs, FailingBackend{}, Strategy::Title);
  EXPECT_EQ(eval.distribution.errors, 5u);
  EXPECT_EQ(eval.distribution.evaluated, 0u);
  EXPECT_EQ(eval.distribution.fraction(RankCategory::Top), 0.0);
  ASSERT_TRUE(eval.outcomes[0].error);
  EXPECT_NE(eval.outcomes[0].error->find("offline"), std::string::npos);
}

TEST(Evaluate, TitlelessPagesAreSkipped) {
  auto g = synth::corpus({.unique_pages = 4, .template_pages = 0});
  g.docs.push_back(text_doc("untitled", "http://untitled.example.org/", {"lonely", "words"}));
  const auto index = InvertedIndex::build(g.docs);
  const auto eval = evaluate_corpus(g.docs, LocalBackend(index), Strategy::Title);
  EXPECT_EQ(eval.distribution.skipped, 1u);
  EXPECT_EQ(eval.distribution.evaluated, 4u);
}

TEST(Evaluate, SignatureStrategiesNeedProvider) {
  const auto g = synth::corpus({.unique_pages = 3, .template_pages = 0});
  const auto index = InvertedIndex::build(g.docs);
  const auto eval = evaluate_corpus(g.docs, LocalBackend(index), Strategy::LS5);
  EXPECT_EQ(eval.distribution.errors, 3u);
  EXPECT_EQ(parse_strategy("ls7"), Strategy::LS7);
  EXPECT_THROW(parse_strategy("ls9"), Error);
}
