#include "relinker/quality.hpp"

#include <algorithm>
#include <fstream>

#include "relinker/error.hpp"
#include "relinker/utf8.hpp"

namespace relinker {

StopTitleList StopTitleList::defaults() {
  return StopTitleList({{"home"},
                        {"index"},
                        {"home", "page"},
                        {"untitled", "document"},
                        {"welcome"},
                        {"main", "page"},
                        {"default", "page"},
                        {"index", "html"}});
}

StopTitleList::StopTitleList(std::vector<Terms> phrases) {
  for (auto& p : phrases) {
    if (p.empty() || contains(p)) continue;
    phrases_.push_back(std::move(p));
  }
  if (phrases_.empty()) throw Error(ErrorCode::InvalidArgument, "stop-title list is empty");
}

StopTitleList StopTitleList::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open stop-title list '" + path.string() + "'");
  std::vector<Terms> phrases;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    phrases.push_back(tokenize(line));
  }
  return StopTitleList(std::move(phrases));
}

bool StopTitleList::contains(const Terms& phrase) const {
  return std::find(phrases_.begin(), phrases_.end(), phrase) != phrases_.end();
}

StopTitleList StopTitleList::extended(const std::vector<Terms>& extra) const {
  std::vector<Terms> all = phrases_;
  all.insert(all.end(), extra.begin(), extra.end());
  return StopTitleList(std::move(all));
}

namespace {

// Maximum total weight of non-overlapping phrase occurrences, where an
// occurrence's weight is the sum of its terms' weights.
std::size_t best_cover(const Terms& terms, const StopTitleList& list, const std::vector<std::size_t>& weight) {
  const std::size_t n = terms.size();
  std::vector<std::size_t> best(n + 1, 0);
  for (std::size_t i = n; i-- > 0;) {
    best[i] = best[i + 1];
    for (const auto& phrase : list.phrases()) {
      if (i + phrase.size() > n || !std::equal(phrase.begin(), phrase.end(), terms.begin() + static_cast<std::ptrdiff_t>(i))) {
        continue;
      }
      std::size_t w = 0;
      for (std::size_t k = i; k < i + phrase.size(); ++k) w += weight[k];
      best[i] = std::max(best[i], w + best[i + phrase.size()]);
    }
  }
  return best[0];
}

}  // namespace

StopCover stop_cover(const TitleRecord& title, const StopTitleList& list) {
  if (title.terms.empty()) throw Error(ErrorCode::InvalidArgument, "title has no terms");
  std::vector<std::size_t> ones(title.terms.size(), 1);
  std::vector<std::size_t> chars;
  chars.reserve(title.terms.size());
  StopCover cover;
  for (const auto& t : title.terms) {
    chars.push_back(utf8::decode(t).size());
    cover.total_chars += chars.back();
  }
  cover.covered_terms = best_cover(title.terms, list, ones);
  cover.covered_chars = best_cover(title.terms, list, chars);
  return cover;
}

std::size_t stop_term_cover(const TitleRecord& title, const StopTitleList& list) {
  return stop_cover(title, list).covered_terms;
}

const char* verdict_rule_name(VerdictRule rule) {
  switch (rule) {
    case VerdictRule::ExactStopTitle: return "ExactStopTitle";
    case VerdictRule::TermRatio: return "TermRatio";
    case VerdictRule::CharRatio: return "CharRatio";
    case VerdictRule::Pass: return "Pass";
  }
  return "";
}

TitleVerdict predict(const TitleRecord& title, const StopTitleList& list, double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw Error(ErrorCode::OutOfRange, "quality threshold must lie in [0, 1]");
  }
  const StopCover cover = stop_cover(title, list);
  TitleVerdict v;
  v.term_ratio = static_cast<double>(cover.covered_terms) / static_cast<double>(title.terms.size());
  v.char_ratio = cover.total_chars ? static_cast<double>(cover.covered_chars) / static_cast<double>(cover.total_chars)
                                   : 0.0;
  v.long_title = title.terms.size() > kLongTitleTerms;
  if (list.contains(title.terms)) {
    v.rule = VerdictRule::ExactStopTitle;
  } else if (v.term_ratio > threshold) {
    v.rule = VerdictRule::TermRatio;
  } else if (v.char_ratio > threshold) {
    v.rule = VerdictRule::CharRatio;
  }
  v.predicted_good = v.rule == VerdictRule::Pass;
  return v;
}

ConfusionMatrix confusion(const std::map<std::string, bool>& predictions, const std::map<std::string, bool>& actuals) {
  std::vector<std::string> only_pred, only_actual;
  for (const auto& [k, _] : predictions) {
    if (!actuals.count(k)) only_pred.push_back(k);
  }
  for (const auto& [k, _] : actuals) {
    if (!predictions.count(k)) only_actual.push_back(k);
  }
  if (!only_pred.empty() || !only_actual.empty()) {
    std::string msg = "prediction and outcome keys differ;";
    if (!only_pred.empty()) msg += " only in predictions: " + join_terms(only_pred, ", ") + ";";
    if (!only_actual.empty()) msg += " only in outcomes: " + join_terms(only_actual, ", ") + ";";
    msg.pop_back();
    throw Error(ErrorCode::KeyMismatch, msg);
  }
  if (predictions.empty()) throw Error(ErrorCode::InvalidArgument, "confusion matrix needs at least one record");

  std::size_t ff = 0, fn = 0, nf = 0, nn = 0;
  for (const auto& [key, predicted_good] : predictions) {
    const bool found = actuals.at(key);
    if (predicted_good) {
      (found ? ff : fn)++;
    } else {
      (found ? nf : nn)++;
    }
  }
  const double n = static_cast<double>(predictions.size());
  ConfusionMatrix m;
  m.total = predictions.size();
  m.found_found = 100.0 * static_cast<double>(ff) / n;
  m.found_notfound = 100.0 * static_cast<double>(fn) / n;
  m.notfound_found = 100.0 * static_cast<double>(nf) / n;
  m.notfound_notfound = 100.0 * static_cast<double>(nn) / n;
  return m;
}

std::vector<DistilledStopTitle> distill_stop_titles(const std::vector<TitleOutcome>& outcomes,
                                                    std::size_t min_occurrences) {
  struct Tally {
    std::size_t seen = 0;
    bool ever_found = false;
  };
  std::map<Terms, Tally> tally;
  for (const auto& o : outcomes) {
    if (o.title.empty()) continue;
    auto& t = tally[o.title];
    ++t.seen;
    t.ever_found = t.ever_found || o.discovered;
  }
  std::vector<DistilledStopTitle> out;
  for (const auto& [phrase, t] : tally) {
    if (!t.ever_found && t.seen >= std::max<std::size_t>(min_occurrences, 1)) out.push_back({phrase, t.seen});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.occurrences > b.occurrences; });
  return out;
}

}  // namespace relinker
