#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "relinker/tokenize.hpp"

namespace relinker {

// Character-level (code point) edit distance with unit costs.
std::size_t edit_distance(std::u32string_view a, std::u32string_view b);
std::size_t edit_distance(std::string_view a, std::string_view b);

// edit_distance / max(|a|, |b|) in code points; 0 for two empty strings.
double levenshtein_norm(std::string_view a, std::string_view b);

// Jaccard similarity of the distinct-term sets; 1 when both are empty.
double term_overlap(std::span<const std::string> a, std::span<const std::string> b);

// The set of contiguous w-term windows of a term sequence. A nonempty
// sequence shorter than w yields exactly one shingle holding all of it.
class ShingleSet {
 public:
  ShingleSet() = default;
  ShingleSet(std::span<const std::string> terms, std::size_t w = 5);

  std::size_t w() const { return w_; }
  std::size_t size() const { return keys_.size(); }
  bool empty() const { return keys_.empty(); }

  // Sorted, unique encodings of the shingles.
  const std::vector<std::string>& keys() const { return keys_; }

  // Decoded term tuples, in key order.
  std::vector<Terms> shingles() const;

 private:
  std::size_t w_ = 5;
  std::vector<std::string> keys_;
};

ShingleSet shingle_set(std::span<const std::string> terms, std::size_t w = 5);

// |S1 ∩ S2| / |S1 ∪ S2|; 1 when both are empty.
double resemblance(const ShingleSet& a, const ShingleSet& b);

enum class SimilarityClass { Exact, High, Medium, Low, None };

const char* similarity_class_name(SimilarityClass c);

// 1 → Exact, [0.75, 1) → High, [0.5, 0.75) → Medium, (0, 0.5) → Low,
// 0 → None. Throws Error(OutOfRange) outside [0, 1].
SimilarityClass classify(double v);

}  // namespace relinker
