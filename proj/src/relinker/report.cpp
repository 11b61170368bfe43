#include "relinker/report.hpp"

#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

#include "relinker/error.hpp"
#include "relinker/uri.hpp"

namespace relinker::report {

using nlohmann::json;

namespace {

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json with_config(const Config& config) {
  json j;
  j["config"] = config;
  return j;
}

json parse_input(const std::string& text, std::string_view what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, "malformed " + std::string(what) + ": " + e.what());
  }
}

std::string tenth(int tenths) { return format_fixed(static_cast<double>(tenths) / 10.0, 1); }

}  // namespace

std::string format_fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string ingest_json(const Corpus& corpus, const Config& config) {
  json j = with_config(config);
  json docs = json::array();
  std::size_t kept = 0, too_short = 0, not_english = 0, no_title = 0;
  for (std::size_t i = 0; i < corpus.documents.size(); ++i) {
    const auto& d = corpus.documents[i];
    const auto& r = corpus.reports[i];
    json reasons = json::array();
    for (auto reason : r.reasons) reasons.push_back(admission_reason_name(reason));
    docs.push_back({{"id", d.id},
                    {"uri", d.uri},
                    {"canonical_uri", canonicalize_uri(d.uri)},
                    {"fetched_at", format_timestamp(d.fetched_at)},
                    {"title", d.title ? json(d.title->raw) : json()},
                    {"term_count", d.terms.size()},
                    {"kept", r.kept},
                    {"reasons", reasons}});
    kept += r.kept;
    too_short += r.has(AdmissionReason::TooShort);
    not_english += r.has(AdmissionReason::NotEnglish);
    no_title += r.has(AdmissionReason::NoTitleWarning);
  }
  j["documents"] = docs;
  j["summary"] = {{"total", corpus.documents.size()},
                  {"kept", kept},
                  {"too_short", too_short},
                  {"not_english", not_english},
                  {"no_title", no_title}};
  return dump(j);
}

std::string titles_json(const Corpus& corpus, const Config& config) {
  json j = with_config(config);
  json titles = json::array();
  for (const auto& d : corpus.documents) {
    json t = {{"id", d.id}, {"uri", d.uri}};
    if (d.title) {
      t["title"] = d.title->raw;
      t["terms"] = d.title->terms;
      t["char_count"] = d.title->char_count;
    } else {
      t["title"] = nullptr;
    }
    titles.push_back(std::move(t));
  }
  j["titles"] = titles;
  return dump(j);
}

std::string index_stats_json(const InvertedIndex& index, const Config& config) {
  json j = with_config(config);
  j["index"] = {{"documents", index.doc_count()},
                {"index_size", index.index_size()},
                {"index_size_estimate",
                 index.index_size_estimate() ? json(*index.index_size_estimate()) : json()},
                {"vocabulary", index.vocabulary_size()},
                {"postings", index.posting_count()}};
  return dump(j);
}

std::string search_json(const InvertedIndex& index, const Terms& query, SearchMode mode, std::size_t max_results,
                        const Config& config) {
  json j = with_config(config);
  j["query"] = query;
  j["mode"] = mode == SearchMode::And ? "and" : "or";
  json results = json::array();
  const auto hits = index.search(query, max_results, mode);
  for (std::size_t i = 0; i < hits.size(); ++i) {
    results.push_back({{"rank", i + 1}, {"uri", index.docs()[hits[i].doc].uri}, {"score", hits[i].score}});
  }
  j["results"] = results;
  return dump(j);
}

std::string signatures_json(std::span<const LexicalSignature> signatures, const Config& config) {
  json j = with_config(config);
  json list = json::array();
  for (const auto& ls : signatures) list.push_back(ls);
  j["signatures"] = list;
  return dump(j);
}

std::string verdicts_json(std::span<const KeyedVerdict> verdicts, const Config& config) {
  json j = with_config(config);
  json list = json::array();
  for (const auto& v : verdicts) {
    json item = {{"title", v.title}};
    if (v.key) item["key"] = *v.key;
    if (v.verdict) {
      item["predicted_good"] = v.verdict->predicted_good;
      item["rule"] = verdict_rule_name(v.verdict->rule);
      item["term_ratio"] = v.verdict->term_ratio;
      item["char_ratio"] = v.verdict->char_ratio;
      item["long_title"] = v.verdict->long_title;
    } else {
      item["error"] = v.error.value_or("no verdict");
    }
    list.push_back(std::move(item));
  }
  j["verdicts"] = list;
  return dump(j);
}

std::string confusion_json(const ConfusionMatrix& m, const Config& config) {
  json j = with_config(config);
  j["confusion"] = {{"total", m.total},
                    {"found_found", m.found_found},
                    {"found_notfound", m.found_notfound},
                    {"notfound_found", m.notfound_found},
                    {"notfound_notfound", m.notfound_notfound}};
  return dump(j);
}

std::string confusion_tsv(const ConfusionMatrix& m) {
  std::ostringstream out;
  out << "predicted\\actual\tFound\tNot Found\n";
  out << "Found\t" << format_fixed(m.found_found, 2) << '\t' << format_fixed(m.found_notfound, 2) << '\n';
  out << "Not Found\t" << format_fixed(m.notfound_found, 2) << '\t' << format_fixed(m.notfound_notfound, 2) << '\n';
  return out.str();
}

std::string outcomes_json(const Evaluation& eval, const Config& config) {
  json j = with_config(config);
  j["strategy"] = strategy_name(eval.strategy);
  json list = json::array();
  for (const auto& o : eval.outcomes) {
    json item = {{"id", o.id}, {"uri", o.uri}};
    item["title"] = o.title ? json(*o.title) : json();
    if (o.skipped) {
      item["skipped"] = "no title";
    } else if (o.error) {
      item["query"] = o.query;
      item["error"] = *o.error;
    } else {
      item["query"] = o.query;
      item["rank_category"] = rank_category_name(o.outcome->category);
      item["rank"] = o.outcome->rank ? json(*o.outcome->rank) : json();
      item["discovered"] = o.outcome->discovered;
    }
    list.push_back(std::move(item));
  }
  j["outcomes"] = list;
  const auto& d = eval.distribution;
  j["distribution"] = {{"evaluated", d.evaluated},
                       {"skipped", d.skipped},
                       {"errors", d.errors},
                       {"Top", d.fraction(RankCategory::Top)},
                       {"Top10", d.fraction(RankCategory::Top10)},
                       {"Top100", d.fraction(RankCategory::Top100)},
                       {"Undiscovered", d.fraction(RankCategory::Undiscovered)}};
  return dump(j);
}

std::string summary_tsv(std::span<const Evaluation> evals) {
  std::ostringstream out;
  out << "strategy\tevaluated\tskipped\terrors\tTop\tTop10\tTop100\tUndiscovered\n";
  for (const auto& e : evals) {
    const auto& d = e.distribution;
    out << strategy_name(e.strategy) << '\t' << d.evaluated << '\t' << d.skipped << '\t' << d.errors;
    for (auto c : {RankCategory::Top, RankCategory::Top10, RankCategory::Top100, RankCategory::Undiscovered}) {
      out << '\t' << format_fixed(d.fraction(c), 6);
    }
    out << '\n';
  }
  return out.str();
}

std::string relevance_csv(const RelevanceTable& table) {
  std::ostringstream out;
  out << "group,metric,rank,Exact,High,Medium,Low,None\n";
  for (int g : {1, 0}) {
    const char* group = g ? "discovered" : "undiscovered";
    for (int metric = 0; metric < 2; ++metric) {
      const auto& rows = metric == 0 ? table.overlap[g] : table.shingle[g];
      for (std::size_t r = 0; r < rows.size(); ++r) {
        out << group << ',' << (metric == 0 ? "overlap" : "shingle") << ',' << r + 1;
        for (auto count : rows[r]) out << ',' << count;
        out << '\n';
      }
    }
  }
  return out.str();
}

std::string evolution_csv(const EvolutionReport& report) {
  std::ostringstream out;
  out << "window,start,representatives,available,excluded,d_0,d_0_0.3,d_0.3_0.5,d_0.5_0.8,d_0.8_1,"
         "p_unchanged,p_minor\n";
  for (const auto& w : report.windows) {
    out << w.window.label << ',' << format_timestamp(w.window.start).substr(0, 10) << ',' << w.representatives << ','
        << w.available << ',' << w.excluded;
    for (auto count : w.histogram) out << ',' << count;
    out << ',' << format_fixed(w.p_unchanged, 6) << ',' << format_fixed(w.p_minor, 6) << '\n';
  }
  return out.str();
}

std::string grid_csv(const CorrelationGrid& grid) {
  std::ostringstream out;
  out << "x,y,frequency\n";
  for (const auto& [point, freq] : grid.points) {
    out << tenth(point.first) << ',' << tenth(point.second) << ',' << freq << '\n';
  }
  return out.str();
}

std::map<std::string, bool> predictions_from_json(const std::string& text) {
  const json j = parse_input(text, "verdict JSON");
  std::map<std::string, bool> out;
  try {
    for (const auto& v : j.at("verdicts")) {
      if (!v.contains("key") || !v.contains("predicted_good")) continue;
      out[v.at("key").get<std::string>()] = v.at("predicted_good").get<bool>();
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("malformed verdict JSON: ") + e.what());
  }
  return out;
}

std::map<std::string, bool> actuals_from_json(const std::string& text) {
  const json j = parse_input(text, "outcome JSON");
  std::map<std::string, bool> out;
  try {
    for (const auto& o : j.at("outcomes")) {
      if (!o.contains("discovered")) continue;
      out[o.at("uri").get<std::string>()] = o.at("discovered").get<bool>();
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("malformed outcome JSON: ") + e.what());
  }
  return out;
}

std::vector<TitleOutcome> title_outcomes_from_json(const std::string& text) {
  const json j = parse_input(text, "outcome JSON");
  std::vector<TitleOutcome> out;
  try {
    if (j.value("strategy", "") != "title") {
      throw Error(ErrorCode::InvalidArgument, "stop titles can only be distilled from title-strategy outcomes");
    }
    for (const auto& o : j.at("outcomes")) {
      if (!o.contains("discovered") || !o.at("title").is_string()) continue;
      out.push_back({tokenize(o.at("title").get<std::string>()), o.at("discovered").get<bool>()});
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("malformed outcome JSON: ") + e.what());
  }
  return out;
}

}  // namespace relinker::report
