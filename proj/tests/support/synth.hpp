#pragma once

// Generated corpora for retrieval and archive tests.

#include <cstddef>
#include <string>
#include <vector>

#include "relinker/archive.hpp"
#include "relinker/corpus.hpp"

namespace synth {

inline constexpr const char* kCollidingTitle = "Welcome to my new website!";

// Pronounceable word that is unique per n and never an English stopword.
std::string word(std::size_t n);

std::string page_html(const std::string& title, const std::vector<std::string>& body);

struct Options {
  std::size_t unique_pages = 200;
  // Pages with unique titles whose bodies lean on "welcome", "new" and "website".
  std::size_t template_pages = 12;
  std::size_t colliding_pages = 0;
  std::size_t salient_terms = 8;
};

struct Generated {
  std::vector<relinker::PageDocument> docs;
  std::vector<std::string> colliding_uris;
};

// Every page gets three title words and a salient vocabulary of its own,
// each salient term repeated three times, plus shared English filler.
Generated corpus(const Options& options);

// Five URIs with scripted histories over make_windows(2009-02, 3): stable
// title with rewritten content, edited title with stable content, fully
// stable, fully changed, and a mix.
struct ArchiveFixture {
  std::vector<relinker::SnapshotSeries> series;
  std::vector<relinker::TimeWindow> windows;
};
ArchiveFixture five_uri_archive();

// Tab-separated "title<TAB>found|notfound" lines; '#' starts a comment.
struct TitleCase {
  std::string title;
  bool found = false;
};
std::vector<TitleCase> read_title_cases(const std::string& path);

}  // namespace synth
