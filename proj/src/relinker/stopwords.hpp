#pragma once

#include <span>
#include <string_view>

namespace relinker {

// The bundled 200-word English stopword list, sorted. Shared by the
// language heuristic, lexical-signature candidacy and query filtering.
std::span<const std::string_view> english_stopwords();

bool is_stopword(std::string_view term);

}  // namespace relinker
