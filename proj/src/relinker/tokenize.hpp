#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace relinker {

using Terms = std::vector<std::string>;

// Lowercase terms split on maximal runs of non-alphanumeric characters.
// Order and duplicates are preserved; empty tokens never appear.
Terms tokenize(std::string_view text);

std::string join_terms(std::span<const std::string> terms, std::string_view sep = " ");

// Case folding and the alphanumeric test used by tokenize(); ASCII plus
// the Latin-1 and Latin Extended-A letters.
char32_t fold_case(char32_t cp);
bool is_term_char(char32_t cp);

}  // namespace relinker
