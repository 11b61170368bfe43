#include "relinker/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "relinker/error.hpp"
#include "relinker/html.hpp"
#include "relinker/stopwords.hpp"
#include "relinker/uri.hpp"
#include "relinker/utf8.hpp"

namespace relinker {

TitleRecord TitleRecord::from_raw(std::string_view raw) {
  TitleRecord rec;
  rec.raw = html::collapse_whitespace(raw);
  rec.terms = tokenize(rec.raw);
  rec.char_count = utf8::decode(rec.raw).size();
  return rec;
}

std::optional<TitleRecord> extract_title(std::string_view raw_html) {
  auto raw = html::extract_title(raw_html);
  if (!raw) return std::nullopt;
  return TitleRecord::from_raw(*raw);
}

PageDocument make_document(std::string id, std::string uri, Timestamp fetched_at, std::string raw_html) {
  PageDocument doc;
  doc.id = std::move(id);
  doc.uri = std::move(uri);
  doc.fetched_at = fetched_at;
  doc.title = extract_title(raw_html);
  doc.terms = tokenize(html::extract_text(raw_html));
  doc.raw_html = std::move(raw_html);
  return doc;
}

const char* admission_reason_name(AdmissionReason reason) {
  switch (reason) {
    case AdmissionReason::TooShort: return "TooShort";
    case AdmissionReason::NotEnglish: return "NotEnglish";
    case AdmissionReason::NoTitleWarning: return "NoTitle-warning";
  }
  return "";
}

bool AdmissionReport::has(AdmissionReason reason) const {
  return std::find(reasons.begin(), reasons.end(), reason) != reasons.end();
}

bool looks_english(const Terms& terms, double min_stopword_ratio) {
  if (terms.empty()) return false;
  const auto hits = std::count_if(terms.begin(), terms.end(), [](const std::string& t) { return is_stopword(t); });
  return static_cast<double>(hits) >= min_stopword_ratio * static_cast<double>(terms.size());
}

AdmissionReport admit(const PageDocument& doc, const AdmissionPolicy& policy) {
  AdmissionReport report;
  if (doc.terms.size() < policy.min_terms) report.reasons.push_back(AdmissionReason::TooShort);
  if (!looks_english(doc.terms, policy.min_stopword_ratio)) report.reasons.push_back(AdmissionReason::NotEnglish);
  if (!doc.title) report.reasons.push_back(AdmissionReason::NoTitleWarning);
  report.kept = !report.has(AdmissionReason::TooShort) && !report.has(AdmissionReason::NotEnglish);
  return report;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<ManifestRecord> read_manifest(const std::filesystem::path& manifest) {
  std::ifstream in(manifest);
  if (!in) throw Error(ErrorCode::Io, "cannot open manifest '" + manifest.string() + "'");
  const auto base = manifest.parent_path();
  std::vector<ManifestRecord> records;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = manifest.string() + ":" + std::to_string(lineno);
    try {
      const auto j = nlohmann::json::parse(line);
      ManifestRecord rec;
      rec.id = j.at("id").get<std::string>();
      rec.uri = j.at("uri").get<std::string>();
      rec.fetched_at = parse_timestamp(j.at("fetched_at").get<std::string>());
      const std::filesystem::path p = j.at("path").get<std::string>();
      rec.path = p.is_absolute() ? p : base / p;
      records.push_back(std::move(rec));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::Parse, "malformed manifest record at " + where + ": " + e.what());
    } catch (const Error& e) {
      throw Error(ErrorCode::Parse, "malformed manifest record at " + where + ": " + e.what());
    }
  }
  return records;
}

std::vector<PageDocument> Corpus::admitted() const {
  std::vector<PageDocument> out;
  for (size_t i = 0; i < documents.size(); ++i) {
    if (reports[i].kept) out.push_back(documents[i]);
  }
  return out;
}

Corpus make_corpus(std::vector<PageDocument> docs, const AdmissionPolicy& policy) {
  std::vector<std::pair<std::string, PageDocument>> keyed;
  keyed.reserve(docs.size());
  for (auto& d : docs) {
    std::string key = canonicalize_uri(d.uri);
    keyed.emplace_back(std::move(key), std::move(d));
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    if (a.second.id != b.second.id) return a.second.id < b.second.id;
    return a.second.fetched_at < b.second.fetched_at;
  });
  Corpus corpus;
  for (auto& [key, doc] : keyed) {
    corpus.reports.push_back(admit(doc, policy));
    corpus.documents.push_back(std::move(doc));
  }
  return corpus;
}

Corpus load_corpus(const std::filesystem::path& manifest, const AdmissionPolicy& policy) {
  std::vector<PageDocument> docs;
  for (auto& rec : read_manifest(manifest)) {
    docs.push_back(make_document(rec.id, rec.uri, rec.fetched_at, read_file(rec.path)));
  }
  return make_corpus(std::move(docs), policy);
}

}  // namespace relinker
