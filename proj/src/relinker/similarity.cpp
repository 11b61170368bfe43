#include "relinker/similarity.hpp"

#include <algorithm>
#include <numeric>

#include "relinker/error.hpp"
#include "relinker/utf8.hpp"

namespace relinker {

std::size_t edit_distance(std::u32string_view a, std::u32string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  // Two-row DP over the shorter string.
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  std::iota(prev.begin(), prev.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t subst = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, subst});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
  return edit_distance(utf8::decode(a), utf8::decode(b));
}

double levenshtein_norm(std::string_view a, std::string_view b) {
  const auto ua = utf8::decode(a);
  const auto ub = utf8::decode(b);
  const std::size_t longest = std::max(ua.size(), ub.size());
  if (longest == 0) return 0.0;
  return static_cast<double>(edit_distance(ua, ub)) / static_cast<double>(longest);
}

namespace {

std::vector<std::string_view> distinct_sorted(std::span<const std::string> terms) {
  std::vector<std::string_view> out(terms.begin(), terms.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

template <typename T>
double jaccard_sorted(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.empty() && b.empty()) return 1.0;
  std::size_t common = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++common;
      ++ia;
      ++ib;
    }
  }
  const std::size_t uni = a.size() + b.size() - common;
  return static_cast<double>(common) / static_cast<double>(uni);
}

// Length-prefixed so that no two distinct tuples share an encoding.
void append_term(std::string& key, const std::string& term) {
  key += std::to_string(term.size());
  key += ':';
  key += term;
}

}  // namespace

double term_overlap(std::span<const std::string> a, std::span<const std::string> b) {
  return jaccard_sorted(distinct_sorted(a), distinct_sorted(b));
}

ShingleSet::ShingleSet(std::span<const std::string> terms, std::size_t w) : w_(w) {
  if (w == 0) throw Error(ErrorCode::InvalidArgument, "shingle width must be at least 1");
  if (terms.empty()) return;
  const std::size_t width = std::min(w, terms.size());
  for (std::size_t start = 0; start + width <= terms.size(); ++start) {
    std::string key;
    for (std::size_t k = start; k < start + width; ++k) append_term(key, terms[k]);
    keys_.push_back(std::move(key));
  }
  std::sort(keys_.begin(), keys_.end());
  keys_.erase(std::unique(keys_.begin(), keys_.end()), keys_.end());
}

std::vector<Terms> ShingleSet::shingles() const {
  std::vector<Terms> out;
  out.reserve(keys_.size());
  for (const auto& key : keys_) {
    Terms tuple;
    std::size_t pos = 0;
    while (pos < key.size()) {
      const std::size_t colon = key.find(':', pos);
      const std::size_t len = std::stoul(key.substr(pos, colon - pos));
      tuple.push_back(key.substr(colon + 1, len));
      pos = colon + 1 + len;
    }
    out.push_back(std::move(tuple));
  }
  return out;
}

ShingleSet shingle_set(std::span<const std::string> terms, std::size_t w) { return ShingleSet(terms, w); }

double resemblance(const ShingleSet& a, const ShingleSet& b) { return jaccard_sorted(a.keys(), b.keys()); }

const char* similarity_class_name(SimilarityClass c) {
  switch (c) {
    case SimilarityClass::Exact: return "Exact";
    case SimilarityClass::High: return "High";
    case SimilarityClass::Medium: return "Medium";
    case SimilarityClass::Low: return "Low";
    case SimilarityClass::None: return "None";
  }
  return "";
}

SimilarityClass classify(double v) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw Error(ErrorCode::OutOfRange, "similarity value " + std::to_string(v) + " outside [0, 1]");
  }
  if (v == 1.0) return SimilarityClass::Exact;
  if (v >= 0.75) return SimilarityClass::High;
  if (v >= 0.5) return SimilarityClass::Medium;
  if (v > 0.0) return SimilarityClass::Low;
  return SimilarityClass::None;
}

}  // namespace relinker
