#pragma once

#include <optional>
#include <string>
#include <string_view>

// Tolerant HTML scanning. Nothing here throws on malformed markup; input
// bytes are decoded as UTF-8 with U+FFFD replacement first.
namespace relinker::html {

// Decodes named (&amp;, &eacute;, ...) and numeric (&#233;, &#xE9;)
// references. Unknown or unterminated references are copied verbatim.
std::string decode_entities(std::string_view text);

// Maps ASCII whitespace and U+00A0 to single spaces, collapses runs and trims.
std::string collapse_whitespace(std::string_view text);

// Inner text of the first <title> element, decoded and whitespace-collapsed.
// Absent when there is no closed title element or it is blank.
std::optional<std::string> extract_title(std::string_view raw_html);

// Visible text: tags, comments, declarations and script/style bodies
// removed, entities decoded, whitespace collapsed.
std::string extract_text(std::string_view raw_html);

}  // namespace relinker::html
