#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "relinker/corpus.hpp"

namespace relinker {

// Lowercase term-sequence phrases that make poor search queries on their own.
class StopTitleList {
 public:
  // home, index, home page, untitled document, welcome, main page,
  // default page, index html
  static StopTitleList defaults();

  // One phrase per line; blank lines and lines starting with '#' are
  // skipped. Phrases are tokenized, so case and punctuation do not matter.
  static StopTitleList load(const std::filesystem::path& path);

  // Duplicates are dropped; throws Error(InvalidArgument) if no nonempty
  // phrase remains.
  explicit StopTitleList(std::vector<Terms> phrases);

  const std::vector<Terms>& phrases() const { return phrases_; }
  bool contains(const Terms& phrase) const;

  StopTitleList extended(const std::vector<Terms>& extra) const;

 private:
  std::vector<Terms> phrases_;
};

struct StopCover {
  std::size_t covered_terms = 0;
  std::size_t covered_chars = 0;
  std::size_t total_chars = 0;  // code points over all title terms
};

// Coverage of the title's terms by non-overlapping stop-title phrase
// occurrences, choosing the placement that covers the most terms (and,
// separately, the most characters). Throws on a title without terms.
StopCover stop_cover(const TitleRecord& title, const StopTitleList& list);
std::size_t stop_term_cover(const TitleRecord& title, const StopTitleList& list);

enum class VerdictRule { ExactStopTitle, TermRatio, CharRatio, Pass };

const char* verdict_rule_name(VerdictRule rule);

inline constexpr double kDefaultQualityThreshold = 0.75;
inline constexpr std::size_t kLongTitleTerms = 24;

struct TitleVerdict {
  bool predicted_good = true;
  VerdictRule rule = VerdictRule::Pass;
  double term_ratio = 0.0;
  double char_ratio = 0.0;
  // More than 24 terms; informational only, never rejects.
  bool long_title = false;
};

// Rules in order: exact stop title, term ratio > threshold, char ratio >
// threshold. Equality does not trigger.
TitleVerdict predict(const TitleRecord& title, const StopTitleList& list,
                     double threshold = kDefaultQualityThreshold);

// Percentages of the total, rows = prediction, columns = actual outcome.
struct ConfusionMatrix {
  double found_found = 0.0;
  double found_notfound = 0.0;
  double notfound_found = 0.0;
  double notfound_notfound = 0.0;
  std::size_t total = 0;
};

// predictions: key → predicted_good; actuals: key → discovered. The key
// sets must match exactly (Error(KeyMismatch) lists the difference).
ConfusionMatrix confusion(const std::map<std::string, bool>& predictions, const std::map<std::string, bool>& actuals);

struct TitleOutcome {
  Terms title;
  bool discovered = false;
};

struct DistilledStopTitle {
  Terms phrase;
  std::size_t occurrences = 0;
};

// Titles that never led back to their page: every occurrence undiscovered
// and at least min_occurrences of them. Most frequent first.
std::vector<DistilledStopTitle> distill_stop_titles(const std::vector<TitleOutcome>& outcomes,
                                                    std::size_t min_occurrences = 2);

}  // namespace relinker
