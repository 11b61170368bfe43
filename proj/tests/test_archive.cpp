#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>

#include <nlohmann/json.hpp>

#include "relinker/archive.hpp"
#include "relinker/error.hpp"
#include "relinker/timestamp.hpp"
#include "relinker/uri.hpp"
#include "synth.hpp"

using namespace relinker;
using namespace std::chrono_literals;

namespace {

Timestamp at(const char* text) { return parse_timestamp(text); }

Snapshot snap(const char* ts, const std::string& title, const std::vector<std::string>& body = {"x"}) {
  return make_snapshot(at(ts), synth::page_html(title, body));
}

SnapshotSeries series_with(const std::string& title, const std::vector<Snapshot>& snaps) {
  SnapshotSeries s("http://s.example.org/", make_document("s", "http://s.example.org/", at("2009-03-01"),
                                                          synth::page_html(title, {"x"})));
  for (const auto& sn : snaps) s.add(sn);
  return s;
}

}  // namespace

TEST(Windows, DefaultsReach1996) {
  const auto windows = make_windows({2009, 2}, 27);
  ASSERT_EQ(windows.size(), 27u);
  EXPECT_EQ(windows.front().label, "2009-02");
  EXPECT_EQ(windows.back().label, "1996-02");
  EXPECT_EQ(windows.back().start, at("1996-02-01"));
  for (std::size_t i = 0; i < windows.size(); ++i) {
    EXPECT_EQ(windows[i].end() - windows[i].start, std::chrono::seconds(24h * 60));
    // newest first, disjoint
    if (i) {
      EXPECT_LE(windows[i].end(), windows[i - 1].start);
    }
  }
}

TEST(Windows, SmallCounts) {
  const auto one = make_windows({2009, 2}, 1);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].label, "2009-02");
  const auto three = make_windows({2009, 2}, 3);
  ASSERT_EQ(three.size(), 3u);
  EXPECT_EQ(three[0].label, "2009-02");
  EXPECT_EQ(three[1].label, "2008-08");
  EXPECT_EQ(three[2].label, "2008-02");
  EXPECT_EQ(three[1].start, at("2008-08-01"));
}

TEST(Windows, Errors) {
  EXPECT_THROW(make_windows({2009, 3}, 3), Error);
  EXPECT_THROW(make_windows({2009, 2}, 0), Error);
  EXPECT_EQ(parse_year_month("2008-08"), (YearMonth{2008, 8}));
  EXPECT_THROW(parse_year_month("2008-13"), Error);
  EXPECT_EQ(format_year_month({1996, 2}), "1996-02");
}

TEST(Representative, EarliestInWindow) {
  const auto window = make_windows({2008, 8}, 1)[0];
  std::vector<Snapshot> snaps = {snap("2008-09-09T00:00:00Z", "Day 40"), snap("2008-08-03T00:00:00Z", "Day 3"),
                                 snap("2008-10-15T00:00:00Z", "Outside")};
  std::sort(snaps.begin(), snaps.end(), [](auto& a, auto& b) { return a.timestamp < b.timestamp; });
  do {
    const auto series = series_with("Base", snaps);
    const Snapshot* rep = representative(series, window);
    ASSERT_TRUE(rep);
    EXPECT_EQ(rep->title->raw, "Day 3");
  } while (std::next_permutation(snaps.begin(), snaps.end(),
                                 [](auto& a, auto& b) { return a.timestamp < b.timestamp; }));
}

TEST(Representative, SingleAndEmpty) {
  const auto windows = make_windows({2008, 8}, 2);
  const auto series = series_with("Base", {snap("2008-08-20T00:00:00Z", "Only")});
  ASSERT_TRUE(representative(series, windows[0]));
  EXPECT_EQ(representative(series, windows[0])->title->raw, "Only");
  EXPECT_FALSE(representative(series, windows[1]));
}

TEST(Series, OrderedAndDuplicateResolution) {
  // same timestamp: the bytewise smaller copy wins whatever the order
  auto s = series_with("Base", {snap("2008-08-20T00:00:00Z", "Beta"), snap("2007-01-01T00:00:00Z", "Old"),
                                snap("2008-08-20T00:00:00Z", "Alpha")});
  ASSERT_EQ(s.snapshots().size(), 2u);
  EXPECT_EQ(s.snapshots()[0].title->raw, "Old");
  EXPECT_EQ(s.snapshots()[1].title->raw, "Alpha");
  auto r = series_with("Base", {snap("2008-08-20T00:00:00Z", "Alpha"), snap("2008-08-20T00:00:00Z", "Beta")});
  ASSERT_EQ(r.snapshots().size(), 1u);
  EXPECT_EQ(r.snapshots()[0].title->raw, "Alpha");
}

TEST(Evolution, Bins) {
  EXPECT_EQ(evolution_bin(0.0), 0u);
  EXPECT_EQ(evolution_bin(0.01), 1u);
  EXPECT_EQ(evolution_bin(0.3), 1u);
  EXPECT_EQ(evolution_bin(0.31), 2u);
  EXPECT_EQ(evolution_bin(0.5), 2u);
  EXPECT_EQ(evolution_bin(0.8), 3u);
  EXPECT_EQ(evolution_bin(0.81), 4u);
  EXPECT_EQ(evolution_bin(1.0), 4u);
}

TEST(Evolution, ScriptedFixture) {
  // Distances per window (baseline title vs representative):
  //   2008-08: 0, 0.1, 0, 1, 0         -> bins [3,1,0,0,1]
  //   2008-02: 0, 0.4, 0, 1, 2/9       -> bins [2,1,1,0,1]
  const auto f = synth::five_uri_archive();
  const auto report = title_evolution(f.series, f.windows);
  ASSERT_EQ(report.windows.size(), 3u);
  EXPECT_EQ(report.windows[0].representatives, 0u);
  EXPECT_EQ(report.windows[0].p_unchanged, 0.0);

  const auto& w1 = report.windows[1];
  EXPECT_EQ(w1.available, 5u);
  EXPECT_EQ(w1.histogram, (std::array<std::size_t, 5>{3, 1, 0, 0, 1}));
  EXPECT_DOUBLE_EQ(w1.p_unchanged, 0.6);
  EXPECT_DOUBLE_EQ(w1.p_minor, 0.8);

  const auto& w2 = report.windows[2];
  EXPECT_EQ(w2.histogram, (std::array<std::size_t, 5>{2, 1, 1, 0, 1}));
  EXPECT_DOUBLE_EQ(w2.p_unchanged, 0.4);
  EXPECT_DOUBLE_EQ(w2.p_minor, 0.6);
}

TEST(Evolution, IdenticalTitlesAreUnchanged) {
  const auto windows = make_windows({2009, 2}, 6);
  std::vector<SnapshotSeries> corpus;
  for (int u = 0; u < 4; ++u) {
    corpus.push_back(series_with("Same Title", {snap("2008-08-05T00:00:00Z", "Same Title", {"p"}),
                                                snap("2007-02-05T00:00:00Z", "Same Title", {"q"})}));
  }
  for (const auto& w : title_evolution(corpus, windows).windows) {
    if (w.available) {
      EXPECT_EQ(w.p_unchanged, 1.0);
    }
  }
}

TEST(Evolution, Properties) {
  std::mt19937 rng(12);
  const auto windows = make_windows({2009, 2}, 8);
  const char* titles[] = {"Home", "Homer", "Radio Station", "Radio", "", "Vertical Radio"};
  std::vector<SnapshotSeries> corpus;
  for (int u = 0; u < 40; ++u) {
    std::vector<Snapshot> snaps;
    for (int k = 0; k < 6; ++k) {
      const auto day = std::chrono::sys_days{std::chrono::year{2005} / 1 / 1} + std::chrono::days(rng() % 1500);
      snaps.push_back(make_snapshot(std::chrono::time_point_cast<std::chrono::seconds>(day),
                                    synth::page_html(titles[rng() % 6], {"w"})));
    }
    corpus.push_back(series_with(titles[rng() % 4], snaps));
  }
  const auto report = title_evolution(corpus, windows);
  const auto exact_only = title_evolution(corpus, windows, 0.0);
  for (std::size_t i = 0; i < windows.size(); ++i) {
    const auto& w = report.windows[i];
    EXPECT_LE(w.p_unchanged, w.p_minor);
    std::size_t total = 0;
    for (auto c : w.histogram) total += c;
    EXPECT_EQ(total, w.available);
    EXPECT_EQ(w.excluded, w.representatives - w.available);
    if (w.available) {
      EXPECT_DOUBLE_EQ(exact_only.windows[i].p_minor,
                       static_cast<double>(w.histogram[0]) / static_cast<double>(w.available));
    }
  }
}

TEST(Grid, Rounding) {
  EXPECT_EQ(round_to_tenth(0.0), 0);
  EXPECT_EQ(round_to_tenth(0.04999), 0);
  EXPECT_EQ(round_to_tenth(0.05), 1);
  EXPECT_EQ(round_to_tenth((0.1 + 0.4) / 2), 3);
  EXPECT_EQ(round_to_tenth(0.35), 4);
  EXPECT_EQ(round_to_tenth(1.0 - 0.8), 2);
  EXPECT_EQ(round_to_tenth(1.0), 10);
}

TEST(Grid, FiveUriFixture) {
  const auto f = synth::five_uri_archive();
  const auto grid = title_vs_content(f.series, f.windows);
  const std::map<std::pair<int, int>, std::size_t> expected = {
      {{0, 10}, 1}, {{3, 2}, 1}, {{0, 0}, 1}, {{10, 10}, 1}, {{1, 5}, 1}};
  EXPECT_EQ(grid.points, expected);
  EXPECT_EQ(grid.included, 5u);
}

TEST(Grid, IdenticalAndRewritten) {
  const auto windows = make_windows({2009, 2}, 3);
  std::vector<std::string> body;
  for (std::size_t i = 0; i < 12; ++i) body.push_back(synth::word(i));
  const std::string html = synth::page_html("Stable", body);
  SnapshotSeries same("http://a/", make_document("a", "http://a/", at("2009-03-01"), html));
  same.add(make_snapshot(at("2008-08-10"), html));
  same.add(make_snapshot(at("2008-02-10"), html));
  const std::vector<SnapshotSeries> one{same};
  EXPECT_EQ(title_vs_content(one, windows).points, (std::map<std::pair<int, int>, std::size_t>{{{0, 0}, 1}}));
}

TEST(Grid, MissingTitlesCountOnlyForContent) {
  const auto windows = make_windows({2009, 2}, 3);
  auto titled = series_with("Title", {snap("2008-08-10", ""), snap("2008-02-10", "Title")});
  auto untitled = series_with("", {snap("2008-08-10", "")});
  auto unwindowed = series_with("Title", {snap("2001-05-10", "Title")});
  const std::vector<SnapshotSeries> corpus{titled, untitled, unwindowed};
  const auto grid = title_vs_content(corpus, windows);
  EXPECT_EQ(grid.included, 1u);
  EXPECT_EQ(grid.no_title, 1u);
  EXPECT_EQ(grid.no_window, 1u);
  // the title average only uses 2008-02; content uses both windows
  EXPECT_EQ(grid.points.begin()->first.first, 0);
}

TEST(Grid, TotalsMatchIncludedAndOrderIndependent) {
  auto f = synth::five_uri_archive();
  std::mt19937 rng(3);
  const auto reference = title_vs_content(f.series, f.windows);
  for (int round = 0; round < 5; ++round) {
    std::shuffle(f.series.begin(), f.series.end(), rng);
    const auto grid = title_vs_content(f.series, f.windows);
    EXPECT_EQ(grid.points, reference.points);
    std::size_t total = 0;
    for (const auto& [xy, n] : grid.points) {
      total += n;
      EXPECT_GE(n, 1u);
      EXPECT_GE(xy.first, 0);
      EXPECT_LE(xy.first, 10);
      EXPECT_GE(xy.second, 0);
      EXPECT_LE(xy.second, 10);
    }
    EXPECT_EQ(total, grid.included);
  }
}

TEST(Store, PutAndLoad) {
  const auto root = std::filesystem::temp_directory_path() / "relinker_test_store";
  std::filesystem::remove_all(root);
  const SnapshotStore store(root);
  store.put("http://Example.org:80/page?x=1", at("2008-08-10T00:00:00Z"), synth::page_html("Old", {"a"}));
  store.put("http://example.org/page", at("2007-02-10T00:00:00Z"), synth::page_html("Older", {"a"}));
  store.put("http://orphan.example.org/", at("2007-02-10T00:00:00Z"), "<title>Orphan</title>");

  const auto dir = root / sha1_hex("http://example.org/page");
  EXPECT_TRUE(std::filesystem::exists(dir / "2008-08-10T00:00:00Z.html"));
  std::ifstream manifest(dir / "manifest.json");
  const auto j = nlohmann::json::parse(manifest);
  EXPECT_EQ(j.at("uri"), "http://example.org/page");
  EXPECT_EQ(j.at("snapshots").size(), 2u);

  const std::vector<PageDocument> baselines = {
      make_document("p", "http://example.org/page", at("2009-03-01"), synth::page_html("New", {"a"}))};
  const auto loaded = store.load(baselines);
  ASSERT_EQ(loaded.series.size(), 1u);
  EXPECT_EQ(loaded.series[0].snapshots().size(), 2u);
  EXPECT_EQ(loaded.series[0].snapshots()[0].title->raw, "Older");
  EXPECT_EQ(loaded.missing_baseline, std::vector<std::string>{"http://orphan.example.org/"});
}

TEST(Store, Sha1) {
  EXPECT_EQ(sha1_hex("abc"), "a9993e364706816aba3e25717850c26c9cd0d89d");
  EXPECT_EQ(sha1_hex(""), "da39a3ee5e6b4b0d3255bfef95601890afd80709");
}
