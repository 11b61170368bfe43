#pragma once

#include <string>
#include <string_view>

namespace relinker::utf8 {

inline constexpr char32_t kReplacement = 0xFFFD;

// Replaces every ill-formed sequence (overlong forms, surrogates, truncated
// sequences, stray continuation bytes) with U+FFFD.
std::string sanitize(std::string_view bytes);

// Lossy decode; ill-formed input maps to U+FFFD like sanitize().
std::u32string decode(std::string_view bytes);

void append(std::string& out, char32_t cp);
std::string encode(std::u32string_view cps);

}  // namespace relinker::utf8
