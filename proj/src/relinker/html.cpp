#include "relinker/html.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <unordered_map>

#include "relinker/utf8.hpp"

namespace relinker::html {
namespace {

const std::unordered_map<std::string_view, char32_t>& named_entities() {
  static const std::unordered_map<std::string_view, char32_t> kTable = [] {
    std::unordered_map<std::string_view, char32_t> t = {
        {"amp", U'&'}, {"lt", U'<'}, {"gt", U'>'}, {"quot", U'"'}, {"apos", U'\''},
        {"OElig", 0x152}, {"oelig", 0x153}, {"Scaron", 0x160}, {"scaron", 0x161},
        {"Yuml", 0x178}, {"fnof", 0x192}, {"circ", 0x2C6}, {"tilde", 0x2DC},
        {"ensp", 0x2002}, {"emsp", 0x2003}, {"thinsp", 0x2009}, {"zwnj", 0x200C},
        {"zwj", 0x200D}, {"lrm", 0x200E}, {"rlm", 0x200F}, {"ndash", 0x2013},
        {"mdash", 0x2014}, {"lsquo", 0x2018}, {"rsquo", 0x2019}, {"sbquo", 0x201A},
        {"ldquo", 0x201C}, {"rdquo", 0x201D}, {"bdquo", 0x201E}, {"dagger", 0x2020},
        {"Dagger", 0x2021}, {"bull", 0x2022}, {"hellip", 0x2026}, {"permil", 0x2030},
        {"prime", 0x2032}, {"Prime", 0x2033}, {"lsaquo", 0x2039}, {"rsaquo", 0x203A},
        {"oline", 0x203E}, {"frasl", 0x2044}, {"euro", 0x20AC}, {"trade", 0x2122},
        {"larr", 0x2190}, {"uarr", 0x2191}, {"rarr", 0x2192}, {"darr", 0x2193},
        {"harr", 0x2194}, {"minus", 0x2212}, {"infin", 0x221E}, {"ne", 0x2260},
        {"le", 0x2264}, {"ge", 0x2265}, {"spades", 0x2660}, {"clubs", 0x2663},
        {"hearts", 0x2665}, {"diams", 0x2666}, {"alpha", 0x3B1}, {"beta", 0x3B2},
        {"gamma", 0x3B3}, {"delta", 0x3B4}, {"pi", 0x3C0}, {"mu", 0x3BC},
        {"sigma", 0x3C3}, {"omega", 0x3C9},
    };
    // Latin-1 supplement, U+00A0..U+00FF, in code point order.
    static constexpr std::array<std::string_view, 96> kLatin1 = {
        "nbsp",   "iexcl",  "cent",   "pound",  "curren", "yen",    "brvbar", "sect",
        "uml",    "copy",   "ordf",   "laquo",  "not",    "shy",    "reg",    "macr",
        "deg",    "plusmn", "sup2",   "sup3",   "acute",  "micro",  "para",   "middot",
        "cedil",  "sup1",   "ordm",   "raquo",  "frac14", "frac12", "frac34", "iquest",
        "Agrave", "Aacute", "Acirc",  "Atilde", "Auml",   "Aring",  "AElig",  "Ccedil",
        "Egrave", "Eacute", "Ecirc",  "Euml",   "Igrave", "Iacute", "Icirc",  "Iuml",
        "ETH",    "Ntilde", "Ograve", "Oacute", "Ocirc",  "Otilde", "Ouml",   "times",
        "Oslash", "Ugrave", "Uacute", "Ucirc",  "Uuml",   "Yacute", "THORN",  "szlig",
        "agrave", "aacute", "acirc",  "atilde", "auml",   "aring",  "aelig",  "ccedil",
        "egrave", "eacute", "ecirc",  "euml",   "igrave", "iacute", "icirc",  "iuml",
        "eth",    "ntilde", "ograve", "oacute", "ocirc",  "otilde", "ouml",   "divide",
        "oslash", "ugrave", "uacute", "ucirc",  "uuml",   "yacute", "thorn",  "yuml",
    };
    for (size_t i = 0; i < kLatin1.size(); ++i) t.emplace(kLatin1[i], static_cast<char32_t>(0xA0 + i));
    return t;
  }();
  return kTable;
}

// Numeric references in 0x80..0x9F are interpreted as windows-1252, as
// browsers do.
char32_t remap_c1(char32_t cp) {
  static constexpr std::array<char32_t, 32> kCp1252 = {
      0x20AC, 0xFFFD, 0x201A, 0x0192, 0x201E, 0x2026, 0x2020, 0x2021,
      0x02C6, 0x2030, 0x0160, 0x2039, 0x0152, 0xFFFD, 0x017D, 0xFFFD,
      0xFFFD, 0x2018, 0x2019, 0x201C, 0x201D, 0x2022, 0x2013, 0x2014,
      0x02DC, 0x2122, 0x0161, 0x203A, 0x0153, 0xFFFD, 0x017E, 0x0178,
  };
  if (cp >= 0x80 && cp <= 0x9F) return kCp1252[cp - 0x80];
  if (cp == 0 || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return utf8::kReplacement;
  return cp;
}

// Parses a reference starting at text[pos] == '&'. On success returns the
// decoded code point and the length consumed.
std::optional<std::pair<char32_t, size_t>> parse_reference(std::string_view text, size_t pos) {
  size_t i = pos + 1;
  if (i < text.size() && text[i] == '#') {
    ++i;
    int base = 10;
    if (i < text.size() && (text[i] == 'x' || text[i] == 'X')) {
      base = 16;
      ++i;
    }
    const size_t start = i;
    uint64_t value = 0;
    while (i < text.size() && i - start < 8) {
      const char c = text[i];
      int d;
      if (c >= '0' && c <= '9') d = c - '0';
      else if (base == 16 && c >= 'a' && c <= 'f') d = c - 'a' + 10;
      else if (base == 16 && c >= 'A' && c <= 'F') d = c - 'A' + 10;
      else break;
      value = value * base + d;
      ++i;
    }
    if (i == start || i >= text.size() || text[i] != ';') return std::nullopt;
    return std::pair{remap_c1(static_cast<char32_t>(std::min<uint64_t>(value, 0x110000))), i + 1 - pos};
  }
  const size_t start = i;
  while (i < text.size() && i - start < 10 && std::isalnum(static_cast<unsigned char>(text[i]))) ++i;
  if (i == start || i >= text.size() || text[i] != ';') return std::nullopt;
  const auto& table = named_entities();
  const auto it = table.find(text.substr(start, i - start));
  if (it == table.end()) return std::nullopt;
  return std::pair{it->second, i + 1 - pos};
}

bool ascii_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

char lower(char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); }

bool iequals_at(std::string_view text, size_t pos, std::string_view word) {
  if (pos + word.size() > text.size()) return false;
  for (size_t i = 0; i < word.size(); ++i) {
    if (lower(text[pos + i]) != word[i]) return false;
  }
  return true;
}

size_t ifind(std::string_view text, std::string_view needle, size_t from) {
  for (size_t i = from; i + needle.size() <= text.size(); ++i) {
    if (iequals_at(text, i, needle)) return i;
  }
  return std::string_view::npos;
}

bool inline_element(std::string_view name) {
  static constexpr std::array<std::string_view, 22> kInline = {
      "a",    "abbr", "b",     "big",  "cite",   "code",   "em",  "font", "i",  "kbd", "mark",
      "q",    "s",    "samp",  "small", "span",  "strike", "strong", "sub", "sup", "tt", "u",
  };
  return std::find(kInline.begin(), kInline.end(), name) != kInline.end();
}

enum class TokenKind { Text, StartTag, EndTag, RawText, Other };

struct Token {
  TokenKind kind = TokenKind::Other;
  std::string name;        // lowercase element name for tags and raw text
  std::string_view text;   // Text / RawText payload
  bool closed = true;      // RawText: whether the end tag was found
};

// Splits sanitized markup into tokens. Elements whose bodies are not markup
// (script, style, title, textarea) come back as a single RawText token.
class Scanner {
 public:
  explicit Scanner(std::string_view html) : html_(html) {}

  bool next(Token& tok) {
    tok = Token{};
    if (!pending_raw_.empty()) {
      emit_raw(tok);
      return true;
    }
    if (pos_ >= html_.size()) return false;
    if (html_[pos_] != '<') {
      const size_t end = find_markup(pos_);
      tok.kind = TokenKind::Text;
      tok.text = html_.substr(pos_, end - pos_);
      pos_ = end;
      return true;
    }
    scan_markup(tok);
    return true;
  }

 private:
  // Next '<' that actually opens markup; a stray '<' stays in the text.
  size_t find_markup(size_t from) const {
    size_t i = from;
    while (true) {
      i = html_.find('<', i);
      if (i == std::string_view::npos) return html_.size();
      if (opens_markup(i)) return i;
      ++i;
    }
  }

  bool opens_markup(size_t i) const {
    if (i + 1 >= html_.size()) return false;
    const char c = html_[i + 1];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '!' || c == '?') return true;
    return c == '/' && i + 2 < html_.size() && std::isalpha(static_cast<unsigned char>(html_[i + 2]));
  }

  void scan_markup(Token& tok) {
    if (!opens_markup(pos_)) {
      // stray '<' at the current position
      const size_t end = find_markup(pos_ + 1);
      tok.kind = TokenKind::Text;
      tok.text = html_.substr(pos_, end - pos_);
      pos_ = end;
      return;
    }
    if (html_.compare(pos_, 4, "<!--") == 0) {
      const size_t end = html_.find("-->", pos_ + 4);
      pos_ = end == std::string_view::npos ? html_.size() : end + 3;
      tok.kind = TokenKind::Other;
      return;
    }
    const char c = html_[pos_ + 1];
    if (c == '!' || c == '?') {
      const size_t end = html_.find('>', pos_ + 2);
      pos_ = end == std::string_view::npos ? html_.size() : end + 1;
      tok.kind = TokenKind::Other;
      return;
    }
    const bool end_tag = c == '/';
    size_t i = pos_ + (end_tag ? 2 : 1);
    std::string name;
    while (i < html_.size()) {
      const char ch = html_[i];
      if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == ':' || ch == '_') {
        name.push_back(lower(ch));
        ++i;
      } else {
        break;
      }
    }
    // Skip attributes, honouring quoted values.
    char quote = 0;
    bool self_closing = false;
    while (i < html_.size()) {
      const char ch = html_[i];
      if (quote) {
        if (ch == quote) quote = 0;
      } else if (ch == '"' || ch == '\'') {
        quote = ch;
      } else if (ch == '>') {
        self_closing = i > 0 && html_[i - 1] == '/';
        break;
      }
      ++i;
    }
    pos_ = i < html_.size() ? i + 1 : html_.size();
    tok.kind = end_tag ? TokenKind::EndTag : TokenKind::StartTag;
    tok.name = name;
    if (!end_tag && !self_closing &&
        (name == "script" || name == "style" || name == "title" || name == "textarea")) {
      pending_raw_ = name;
    }
  }

  void emit_raw(Token& tok) {
    const std::string closing = "</" + pending_raw_;
    size_t end = pos_;
    while (true) {
      end = ifind(html_, closing, end);
      if (end == std::string_view::npos) break;
      const size_t after = end + closing.size();
      if (after >= html_.size() || html_[after] == '>' || html_[after] == '/' || ascii_space(html_[after])) break;
      end = after;
    }
    tok.kind = TokenKind::RawText;
    tok.name = pending_raw_;
    pending_raw_.clear();
    if (end == std::string_view::npos) {
      tok.text = html_.substr(pos_);
      tok.closed = false;
      pos_ = html_.size();
      return;
    }
    tok.text = html_.substr(pos_, end - pos_);
    const size_t gt = html_.find('>', end);
    pos_ = gt == std::string_view::npos ? html_.size() : gt + 1;
  }

  std::string_view html_;
  size_t pos_ = 0;
  std::string pending_raw_;
};

}  // namespace

std::string decode_entities(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  size_t i = 0;
  while (i < text.size()) {
    const size_t amp = text.find('&', i);
    if (amp == std::string_view::npos) {
      out.append(text.substr(i));
      break;
    }
    out.append(text.substr(i, amp - i));
    if (const auto ref = parse_reference(text, amp)) {
      utf8::append(out, ref->first);
      i = amp + ref->second;
    } else {
      out.push_back('&');
      i = amp + 1;
    }
  }
  return out;
}

std::string collapse_whitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    bool space = ascii_space(c);
    size_t width = 1;
    if (!space && c == '\xC2' && i + 1 < text.size() && text[i + 1] == '\xA0') {
      space = true;
      width = 2;
    }
    if (space) {
      pending_space = !out.empty();
      i += width - 1;
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(c);
  }
  return out;
}

std::optional<std::string> extract_title(std::string_view raw_html) {
  const std::string html = utf8::sanitize(raw_html);
  Scanner scanner(html);
  Token tok;
  while (scanner.next(tok)) {
    if (tok.kind != TokenKind::RawText || tok.name != "title") continue;
    if (!tok.closed) return std::nullopt;
    std::string title = collapse_whitespace(decode_entities(tok.text));
    if (title.empty()) return std::nullopt;
    return title;
  }
  return std::nullopt;
}

std::string extract_text(std::string_view raw_html) {
  const std::string html = utf8::sanitize(raw_html);
  Scanner scanner(html);
  std::string text;
  text.reserve(html.size() / 2);
  Token tok;
  while (scanner.next(tok)) {
    switch (tok.kind) {
      case TokenKind::Text:
        text += decode_entities(tok.text);
        break;
      case TokenKind::RawText:
        if (tok.name == "title" || tok.name == "textarea") text += decode_entities(tok.text);
        text.push_back(' ');
        break;
      case TokenKind::StartTag:
      case TokenKind::EndTag:
        if (!inline_element(tok.name)) text.push_back(' ');
        break;
      case TokenKind::Other:
        text.push_back(' ');
        break;
    }
  }
  return collapse_whitespace(text);
}

}  // namespace relinker::html
