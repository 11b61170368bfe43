#include "relinker/tokenize.hpp"

#include "relinker/utf8.hpp"

namespace relinker {

char32_t fold_case(char32_t cp) {
  if (cp >= U'A' && cp <= U'Z') return cp + 32;
  if (cp < 0x80) return cp;
  if ((cp >= 0xC0 && cp <= 0xDE) && cp != 0xD7) return cp + 32;
  // Latin Extended-A pairs upper/lower case on even/odd code points, with
  // the 0x139..0x148 and 0x179..0x17E runs shifted by one.
  if (cp >= 0x100 && cp <= 0x137 && cp % 2 == 0) return cp + 1;
  if (cp >= 0x139 && cp <= 0x148 && cp % 2 == 1) return cp + 1;
  if (cp >= 0x14A && cp <= 0x177 && cp % 2 == 0) return cp + 1;
  if (cp == 0x178) return 0xFF;
  if (cp >= 0x179 && cp <= 0x17E && cp % 2 == 1) return cp + 1;
  if (cp >= 0x391 && cp <= 0x3A9 && cp != 0x3A2) return cp + 32;
  if (cp >= 0x410 && cp <= 0x42F) return cp + 32;
  return cp;
}

bool is_term_char(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= U'0' && cp <= U'9') || (cp >= U'a' && cp <= U'z') || (cp >= U'A' && cp <= U'Z');
  }
  if (cp == utf8::kReplacement) return false;
  if (cp <= 0xBF) return cp == 0xAA || cp == 0xB5 || cp == 0xBA;  // ordinal indicators, micro
  if (cp == 0xD7 || cp == 0xF7) return false;
  // General punctuation, symbols and CJK punctuation blocks.
  if (cp >= 0x2000 && cp <= 0x2BFF) return false;
  if (cp >= 0x3000 && cp <= 0x303F) return false;
  if (cp >= 0xFE30 && cp <= 0xFE4F) return false;
  if (cp >= 0xFF00 && cp <= 0xFF0F) return false;
  return true;
}

Terms tokenize(std::string_view text) {
  Terms terms;
  std::string current;
  for (char32_t cp : utf8::decode(text)) {
    if (is_term_char(cp)) {
      utf8::append(current, fold_case(cp));
    } else if (!current.empty()) {
      terms.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) terms.push_back(std::move(current));
  return terms;
}

std::string join_terms(std::span<const std::string> terms, std::string_view sep) {
  std::string out;
  for (size_t i = 0; i < terms.size(); ++i) {
    if (i) out.append(sep);
    out.append(terms[i]);
  }
  return out;
}

}  // namespace relinker
