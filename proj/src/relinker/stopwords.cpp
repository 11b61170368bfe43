#include "relinker/stopwords.hpp"

#include <algorithm>
#include <array>

namespace relinker {
namespace {

constexpr std::array<std::string_view, 200> kStopwords = {
    "a", "about", "above", "across", "after", "again", "against", "all", "along", "already",
    "also", "although", "always", "am", "among", "an", "and", "another", "any", "anybody",
    "anyone", "anything", "are", "around", "as", "at", "away", "be", "became", "because",
    "become", "becomes", "been", "before", "being", "below", "between", "beyond", "both",
    "but", "by", "can", "cannot", "could", "did", "do", "does", "doing", "down", "during",
    "each", "either", "else", "enough", "even", "ever", "every", "everybody", "everyone",
    "everything", "few", "for", "from", "further", "had", "has", "have", "having", "he",
    "her", "here", "hers", "herself", "him", "himself", "his", "how", "however", "i", "if",
    "in", "into", "is", "it", "its", "itself", "just", "later", "least", "less", "let",
    "like", "many", "may", "me", "might", "more", "most", "mostly", "much", "must", "my",
    "myself", "neither", "no", "nobody", "none", "nor", "not", "nothing", "now", "of",
    "off", "often", "on", "once", "only", "onto", "or", "other", "others", "our", "ours",
    "ourselves", "out", "over", "own", "per", "rather", "same", "seem", "seems", "several",
    "shall", "she", "should", "since", "so", "some", "somebody", "someone", "something",
    "sometimes", "still", "such", "than", "that", "the", "their", "theirs", "them",
    "themselves", "then", "there", "therefore", "these", "they", "this", "those", "though",
    "through", "throughout", "to", "together", "too", "toward", "under", "unless", "unlike",
    "until", "up", "upon", "us", "very", "was", "we", "were", "what", "whatever", "when",
    "where", "whether", "which", "while", "who", "whom", "whose", "why", "will", "with",
    "within", "without", "would", "yes", "yet", "you", "your", "yours", "yourself",
    "yourselves"
};

}  // namespace

std::span<const std::string_view> english_stopwords() { return kStopwords; }

bool is_stopword(std::string_view term) {
  return std::binary_search(kStopwords.begin(), kStopwords.end(), term);
}

}  // namespace relinker
