// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "oracles.hpp"
#include "relinker/archive.hpp"
#include "relinker/corpus.hpp"
#include "relinker/error.hpp"
#include "relinker/index.hpp"
#include "relinker/log.hpp"
#include "relinker/quality.hpp"
#include "relinker/rediscovery.hpp"
#include "relinker/signatures.hpp"
#include "relinker/similarity.hpp"
#include "relinker/timestamp.hpp"
#include "synth.hpp"

namespace fs = std::filesystem;
using namespace relinker;

namespace {

struct Result {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v, int decimals = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string random_abc(std::mt19937& rng) {
  std::string s(rng() % 9, 'a');
  for (char& c : s) c = static_cast<char>('a' + rng() % 3);
  return s;
}

Result levenshtein_oracle() {
  std::mt19937 rng(20090201);
  const auto start = Clock::now();
  const int pairs = 12000;
  int mismatches = 0;
  for (int i = 0; i < pairs; ++i) {
    const std::string a = random_abc(rng), b = random_abc(rng);
    if (levenshtein_norm(a, b) != oracle::naive_levenshtein_norm(a, b)) ++mismatches;
  }
  const double elapsed = seconds_since(start);
  return {mismatches == 0 && elapsed < 10.0, std::to_string(pairs) + " pairs, " + std::to_string(mismatches) +
                                                 " mismatches, " + fmt(elapsed, 2) + " s"};
}

Result shingle_oracle() {
  std::mt19937 rng(5);
  const std::vector<std::string> vocab = {"a", "b", "c", "d"};
  const auto sequence = [&] {
    std::vector<std::string> terms(rng() % 31);
    for (auto& t : terms) t = vocab[rng() % vocab.size()];
    return terms;
  };
  int mismatches = 0;
  const int pairs = 1000;
  for (int i = 0; i < pairs; ++i) {
    const auto a = sequence(), b = sequence();
    if (resemblance(shingle_set(a, 5), shingle_set(b, 5)) != oracle::brute_resemblance(a, b, 5)) ++mismatches;
  }
  return {mismatches == 0, std::to_string(pairs) + " pairs, " + std::to_string(mismatches) + " mismatches"};
}

Result classification_bins() {
  const std::vector<std::pair<double, SimilarityClass>> probes = {
      {0.0, SimilarityClass::None},    {0.001, SimilarityClass::Low},  {0.49, SimilarityClass::Low},
      {0.5, SimilarityClass::Medium},  {0.74, SimilarityClass::Medium}, {0.75, SimilarityClass::High},
      {0.9, SimilarityClass::High},    {0.999, SimilarityClass::High}, {1.0, SimilarityClass::Exact}};
  std::string wrong;
  for (const auto& [v, expected] : probes) {
    const auto got = classify(v);
    if (got != expected) wrong += " " + fmt(v) + "->" + similarity_class_name(got);
  }
  return {wrong.empty(), wrong.empty() ? std::to_string(probes.size()) + " probes" : "wrong:" + wrong};
}

struct Run {
  std::vector<PageDocument> admitted;
  InvertedIndex index;
  Evaluation eval;
};

Run run_title(const synth::Options& options) {
  const auto generated = synth::corpus(options);
  auto admitted = make_corpus(generated.docs).admitted();
  auto index = InvertedIndex::build(admitted);
  const LocalBackend backend(index);
  auto eval = evaluate_corpus(admitted, backend, Strategy::Title);
  return {std::move(admitted), std::move(index), std::move(eval)};
}

std::vector<std::optional<std::size_t>> ranks(const Evaluation& eval) {
  std::vector<std::optional<std::size_t>> out;
  for (const auto& o : eval.outcomes) out.push_back(o.outcome ? o.outcome->rank : std::nullopt);
  return out;
}

Result retrieval_sanity() {
  const auto start = Clock::now();
  synth::Options unique;
  const Run a = run_title(unique);
  const std::size_t top_a = a.eval.distribution.counts[static_cast<int>(RankCategory::Top)];
  const bool all_top = a.admitted.size() == 200 && top_a == 200 && a.eval.distribution.evaluated == 200;

  synth::Options colliding = unique;
  colliding.colliding_pages = 5;
  const auto generated = synth::corpus(colliding);
  const Run b = run_title(colliding);
  const Run b2 = run_title(colliding);
  const bool deterministic = ranks(b.eval) == ranks(b2.eval);

  const std::set<std::string> colliders(generated.colliding_uris.begin(), generated.colliding_uris.end());
  std::size_t colliders_seen = 0, colliders_top = 0;
  std::vector<TitleOutcome> title_outcomes;
  for (const auto& o : b.eval.outcomes) {
    if (!o.outcome || !o.title) continue;
    title_outcomes.push_back({TitleRecord::from_raw(*o.title).terms, o.outcome->discovered});
    if (!colliders.count(o.uri)) continue;
    ++colliders_seen;
    if (o.outcome->category == RankCategory::Top) ++colliders_top;
  }

  std::vector<Terms> distilled;
  for (const auto& d : distill_stop_titles(title_outcomes)) distilled.push_back(d.phrase);
  const auto learned = StopTitleList::defaults().extended(distilled);
  const auto record = TitleRecord::from_raw(synth::kCollidingTitle);
  const auto verdict = predict(record, learned);
  const auto default_verdict = predict(record, StopTitleList::defaults());

  const double elapsed = seconds_since(start);
  const bool pass = all_top && colliders_seen == 5 && colliders_top == 0 && !verdict.predicted_good &&
                    deterministic && elapsed < 5.0;
  return {pass, "unique corpus " + std::to_string(top_a) + "/200 Top; colliders non-Top " +
                    std::to_string(colliders_seen - colliders_top) + "/5; learned list rule " +
                    verdict_rule_name(verdict.rule) + " (default list alone: " +
                    verdict_rule_name(default_verdict.rule) + "); " + fmt(elapsed, 2) + " s"};
}

Result ls_retrieval() {
  const auto generated = synth::corpus(synth::Options{});
  const auto admitted = make_corpus(generated.docs).admitted();
  const auto index = InvertedIndex::build(admitted);
  const LocalBackend backend(index);
  const auto ls5 = evaluate_corpus(admitted, backend, Strategy::LS5, &index);
  const auto ls7 = evaluate_corpus(admitted, backend, Strategy::LS7, &index);
  const double top5 = ls5.distribution.fraction(RankCategory::Top);
  const double top7 = ls7.distribution.fraction(RankCategory::Top);

  std::size_t not_superset = 0;
  for (const auto& doc : admitted) {
    const auto s5 = generate_ls(doc, index, 5).terms;
    const auto s7 = generate_ls(doc, index, 7).terms;
    const std::set<std::string> big(s7.begin(), s7.end());
    if (!std::all_of(s5.begin(), s5.end(), [&](const std::string& t) { return big.count(t) > 0; })) ++not_superset;
  }
  return {top5 >= 0.95 && top7 >= 0.95 && not_superset == 0,
          "ls5 Top " + fmt(top5) + ", ls7 Top " + fmt(top7) + ", " + std::to_string(not_superset) +
              " documents where ls7 misses an ls5 term"};
}

Result quality_thresholds() {
  const auto list = StopTitleList::defaults();
  const auto wh = predict(TitleRecord::from_raw("welcome home"), list);
  const auto edge = predict(TitleRecord::from_raw("home index welcome photography"), list);
  const bool rules = !wh.predicted_good && wh.rule == VerdictRule::TermRatio && edge.term_ratio == 0.75 &&
                     edge.predicted_good && edge.rule == VerdictRule::Pass;

  std::map<std::string, bool> pred, act;
  for (const auto& c : synth::read_title_cases(RELINKER_FIXTURES "/titles20.tsv")) {
    pred[c.title] = predict(TitleRecord::from_raw(c.title), list).predicted_good;
    act[c.title] = c.found;
  }
  const auto m = confusion(pred, act);
  const auto near = [](double got, double want) { return std::abs(got - want) <= 0.01; };
  const bool matrix = m.total == 20 && near(m.found_found, 45.0) && near(m.found_notfound, 10.0) &&
                      near(m.notfound_found, 10.0) && near(m.notfound_notfound, 35.0);
  return {rules && matrix, std::string("welcome home -> ") + verdict_rule_name(wh.rule) + ", ratio 0.75 -> " +
                               verdict_rule_name(edge.rule) + ", 20-title matrix " + fmt(m.found_found, 2) + "/" +
                               fmt(m.found_notfound, 2) + "/" + fmt(m.notfound_found, 2) + "/" +
                               fmt(m.notfound_notfound, 2)};
}

Result windowing() {
  const auto windows = make_windows({2009, 2}, 27);
  bool shape = windows.size() == 27 && windows.front().label == "2009-02" && windows.back().label == "1996-02" &&
               windows.front().start == parse_timestamp("2009-02-01T00:00:00Z");
  for (std::size_t i = 0; shape && i < windows.size(); ++i) {
    if (windows[i].end() - windows[i].start != kWindowSpan) shape = false;
    if (i + 1 < windows.size() && windows[i + 1].end() > windows[i].start) shape = false;
  }

  // 2008-08 window covers [Aug 1, Sep 30).
  const auto base = make_document("r", "http://r.example.org/", parse_timestamp("2009-03-01T00:00:00Z"),
                                  synth::page_html("Baseline", {"x"}));
  SnapshotSeries series("http://r.example.org/", base);
  for (const char* ts : {"2008-09-10T00:00:00Z", "2008-10-15T00:00:00Z", "2008-08-03T12:00:00Z"}) {
    series.add(make_snapshot(parse_timestamp(ts), synth::page_html(ts, {"x"})));
  }
  const auto find = [&](const std::string& label) {
    return *std::find_if(windows.begin(), windows.end(), [&](const TimeWindow& w) { return w.label == label; });
  };
  const Snapshot* aug = representative(series, find("2008-08"));
  const Snapshot* feb = representative(series, find("2009-02"));
  const bool picks = aug && aug->timestamp == parse_timestamp("2008-08-03T12:00:00Z") && feb == nullptr;
  return {shape && picks, std::to_string(windows.size()) + " windows " + windows.front().label + " .. " +
                              windows.back().label + "; representative 2008-08 = " +
                              (aug ? format_timestamp(aug->timestamp) : std::string("none"))};
}

Result correlation_grid() {
  const auto fixture = synth::five_uri_archive();
  const auto grid = title_vs_content(fixture.series, fixture.windows, 5);
  const std::map<std::pair<int, int>, std::size_t> expected = {
      {{0, 10}, 1}, {{3, 2}, 1}, {{0, 0}, 1}, {{10, 10}, 1}, {{1, 5}, 1}};
  std::string points;
  for (const auto& [p, n] : grid.points) {
    points += " [" + fmt(p.first / 10.0, 1) + "," + fmt(p.second / 10.0, 1) + "]x" + std::to_string(n);
  }
  return {grid.points == expected && grid.included == 5, "points" + points};
}

// Runs the CLI, appending its stderr to a log; returns the exit status.
int cli(const fs::path& log, const std::string& args) {
  const std::string cmd = std::string("'") + RELINKER_CLI + "' -q " + args + " 2>>'" + log.string() + "'";
  return std::system(cmd.c_str());
}

std::string q(const fs::path& p) { return "'" + p.string() + "'"; }

// Every file under dir, relative path → bytes.
std::map<std::string, std::string> snapshot_tree(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file() || e.path().extension() == ".log" || e.path().filename() == "manifest.jsonl") continue;
    out[fs::relative(e.path(), dir).string()] = read_file(e.path());
  }
  return out;
}

struct SnapshotLine {
  std::string uri, timestamp, path;
};

std::string pipeline(const fs::path& work, const fs::path& manifest, const std::vector<SnapshotLine>& snapshots) {
  fs::remove_all(work);
  fs::create_directories(work / "out");
  const auto log = work / "cli.log";
  const auto o = work / "out";
  const std::string m = "--manifest " + q(manifest);
  std::vector<std::string> steps = {
      "ingest " + m + " --out " + q(o / "ingest.json"),
      "index build " + m + " --out " + q(o / "index.json"),
      "title " + m + " --out " + q(o / "titles.json"),
      "lexsig " + m + " --index " + q(o / "index.json") + " --out " + q(o / "signatures.json"),
      "quality " + m + " --out " + q(o / "verdicts.json")};
  for (const char* s : {"title", "ls5", "ls7"}) {
    steps.push_back("rediscover " + m + " --index " + q(o / "index.json") + " --strategy " + s + " --out " +
                    q(o / (std::string("outcomes_") + s + ".json")) + " --summary " +
                    q(o / (std::string("summary_") + s + ".tsv")));
  }
  steps.push_back("relevance " + m + " --strategy title --out " + q(o / "relevance.csv"));
  steps.push_back("quality distill --outcomes " + q(o / "outcomes_title.json") + " --out " + q(o / "stop_titles.txt"));
  steps.push_back("eval --verdicts " + q(o / "verdicts.json") + " --outcomes " + q(o / "outcomes_title.json") +
                  " --out " + q(o / "confusion.json") + " --tsv " + q(o / "confusion.tsv"));
  for (const auto& s : snapshots) {
    steps.push_back("archive put --snapshots " + q(work / "store") + " --uri " + q(s.uri) + " --timestamp " +
                    s.timestamp + " --html " + q(s.path));
  }
  steps.push_back("evolve --snapshots " + q(work / "store") + " " + m + " --out " + q(o / "evolve.csv"));
  steps.push_back("correlate --snapshots " + q(work / "store") + " " + m + " --out " + q(o / "grid.csv"));
  for (const auto& step : steps) {
    if (cli(log, step) != 0) return "step failed: " + step;
  }
  return {};
}

Result determinism() {
  const fs::path fixture = RELINKER_FIXTURES "/corpus20";
  const fs::path root = fs::temp_directory_path() / ("relinker_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(root);

  std::vector<std::string> lines;
  {
    std::ifstream in(fixture / "manifest.jsonl");
    for (std::string line; std::getline(in, line);) {
      if (!line.empty()) lines.push_back(line);
    }
  }
  std::vector<SnapshotLine> snapshots;
  {
    std::ifstream in(fixture / "snapshots.tsv");
    for (std::string line; std::getline(in, line);) {
      std::istringstream fields(line);
      SnapshotLine s;
      if (std::getline(fields, s.uri, '\t') && std::getline(fields, s.timestamp, '\t') &&
          std::getline(fields, s.path)) {
        s.path = (fixture / s.path).string();
        snapshots.push_back(s);
      }
    }
  }

  // Permuted copy: shuffled manifest lines with absolute page paths, snapshots put in reverse.
  std::mt19937 rng(7);
  std::shuffle(lines.begin(), lines.end(), rng);
  fs::create_directories(root / "permuted");
  {
    std::ofstream out(root / "permuted" / "manifest.jsonl");
    for (std::string line : lines) {
      const std::string key = "\"path\": \"";
      const auto at = line.find(key);
      if (at != std::string::npos) line.insert(at + key.size(), fixture.string() + "/");
      out << line << '\n';
    }
  }
  std::vector<SnapshotLine> reversed(snapshots.rbegin(), snapshots.rend());

  std::string error = pipeline(root / "run1", fixture / "manifest.jsonl", snapshots);
  if (error.empty()) error = pipeline(root / "run2", fixture / "manifest.jsonl", snapshots);
  if (error.empty()) error = pipeline(root / "run3", root / "permuted" / "manifest.jsonl", reversed);
  if (!error.empty()) return {false, error};

  const auto t1 = snapshot_tree(root / "run1");
  const auto t2 = snapshot_tree(root / "run2");
  const auto t3 = snapshot_tree(root / "run3");
  std::string diffs;
  for (const auto& [name, bytes] : t1) {
    if (!t2.count(name) || t2.at(name) != bytes) diffs += " " + name + "(rerun)";
    if (!t3.count(name) || t3.at(name) != bytes) diffs += " " + name + "(permuted)";
  }
  if (t1.size() != t2.size() || t1.size() != t3.size()) diffs += " file-count";
  const bool pass = diffs.empty() && t1.size() > 10;
  if (pass) fs::remove_all(root);
  return {pass, std::to_string(t1.size()) + " files compared across 2 runs and 1 permutation" +
                    (diffs.empty() ? "" : "; differing:" + diffs + " (kept in " + root.string() + ")")};
}

}  // namespace

int main() {
  set_log_level(LogLevel::Off);
  const std::vector<std::pair<std::string, std::function<Result()>>> criteria = {
      {"levenshtein-oracle", levenshtein_oracle},
      {"shingle-oracle", shingle_oracle},
      {"classification-bins", classification_bins},
      {"retrieval-sanity", retrieval_sanity},
      {"ls-retrieval", ls_retrieval},
      {"quality-thresholds", quality_thresholds},
      {"windowing", windowing},
      {"correlation-grid", correlation_grid},
      {"determinism", determinism},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Result r;
    try {
      r = check();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    if (!r.pass) ++failed;
    std::cout << (r.pass ? "PASS " : "FAIL ") << name << ": " << r.detail << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed ? 1 : 0;
}
