#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "relinker/timestamp.hpp"
#include "relinker/tokenize.hpp"

namespace relinker {

struct TitleRecord {
  std::string raw;          // display form, whitespace-collapsed
  Terms terms;              // tokenize(raw)
  std::size_t char_count = 0;  // code points in raw

  static TitleRecord from_raw(std::string_view raw);
};

struct PageDocument {
  std::string id;
  std::string uri;
  Timestamp fetched_at{};
  std::string raw_html;
  std::optional<TitleRecord> title;
  Terms terms;
};

// Builds a document from raw bytes: title, visible text and terms.
PageDocument make_document(std::string id, std::string uri, Timestamp fetched_at, std::string raw_html);

std::optional<TitleRecord> extract_title(std::string_view raw_html);

enum class AdmissionReason { TooShort, NotEnglish, NoTitleWarning };

const char* admission_reason_name(AdmissionReason reason);

struct AdmissionReport {
  bool kept = true;
  std::vector<AdmissionReason> reasons;

  bool has(AdmissionReason reason) const;
};

struct AdmissionPolicy {
  std::size_t min_terms = 50;
  // Share of tokens that must be bundled English stopwords.
  double min_stopword_ratio = 0.10;
};

// True iff at least `min_stopword_ratio` of the terms are English
// stopwords. An empty term list is not English.
bool looks_english(const Terms& terms, double min_stopword_ratio = 0.10);

AdmissionReport admit(const PageDocument& doc, const AdmissionPolicy& policy = {});

struct ManifestRecord {
  std::string id;
  std::string uri;
  Timestamp fetched_at{};
  std::filesystem::path path;  // resolved against the manifest directory
};

// JSON-lines manifest: one {"id","uri","fetched_at","path"} object per
// non-blank line. Throws Error(Parse) naming the offending line.
std::vector<ManifestRecord> read_manifest(const std::filesystem::path& manifest);

std::string read_file(const std::filesystem::path& path);

struct Corpus {
  std::vector<PageDocument> documents;  // sorted by canonical URI, then id
  std::vector<AdmissionReport> reports;  // parallel to documents

  std::vector<PageDocument> admitted() const;
};

// Loads every manifest entry, evaluates admission and orders the result by
// canonical URI so that manifest order never affects downstream output.
Corpus load_corpus(const std::filesystem::path& manifest, const AdmissionPolicy& policy = {});

Corpus make_corpus(std::vector<PageDocument> docs, const AdmissionPolicy& policy = {});

}  // namespace relinker
