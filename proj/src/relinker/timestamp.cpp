#include "relinker/timestamp.hpp"

#include <cctype>
#include <cstdio>

#include "relinker/error.hpp"

namespace relinker {
namespace {

using namespace std::chrono;

[[noreturn]] void bad(std::string_view text) {
  throw Error(ErrorCode::Parse, "invalid ISO-8601 timestamp: '" + std::string(text) + "'");
}

int digits(std::string_view text, std::string_view whole, size_t pos, size_t n) {
  if (pos + n > text.size()) bad(whole);
  int value = 0;
  for (size_t i = pos; i < pos + n; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) bad(whole);
    value = value * 10 + (text[i] - '0');
  }
  return value;
}

void expect(std::string_view text, std::string_view whole, size_t pos, char c) {
  if (pos >= text.size() || text[pos] != c) bad(whole);
}

}  // namespace

Timestamp parse_timestamp(std::string_view text) {
  const std::string_view whole = text;
  const int y = digits(text, whole, 0, 4);
  expect(text, whole, 4, '-');
  const int mo = digits(text, whole, 5, 2);
  expect(text, whole, 7, '-');
  const int d = digits(text, whole, 8, 2);
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) bad(whole);

  size_t pos = 10;
  int hh = 0, mm = 0, ss = 0;
  if (pos < text.size() && (text[pos] == 'T' || text[pos] == ' ')) {
    hh = digits(text, whole, pos + 1, 2);
    expect(text, whole, pos + 3, ':');
    mm = digits(text, whole, pos + 4, 2);
    pos += 6;
    if (pos < text.size() && text[pos] == ':') {
      ss = digits(text, whole, pos + 1, 2);
      pos += 3;
      if (pos < text.size() && (text[pos] == '.' || text[pos] == ',')) {
        ++pos;
        const size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) bad(whole);
      }
    }
    if (hh > 23 || mm > 59 || ss > 60) bad(whole);
  }

  seconds offset{0};
  if (pos < text.size()) {
    if (text[pos] == 'Z' || text[pos] == 'z') {
      ++pos;
    } else if (text[pos] == '+' || text[pos] == '-') {
      const int sign = text[pos] == '+' ? 1 : -1;
      const int oh = digits(text, whole, pos + 1, 2);
      expect(text, whole, pos + 3, ':');
      const int om = digits(text, whole, pos + 4, 2);
      offset = seconds{sign * (oh * 3600 + om * 60)};
      pos += 6;
    }
  }
  if (pos != text.size()) bad(whole);

  return sys_days{ymd} + hours{hh} + minutes{mm} + seconds{ss} - offset;
}

std::string format_timestamp(Timestamp ts) {
  const auto day_point = floor<days>(ts);
  const year_month_day ymd{day_point};
  const hh_mm_ss<seconds> tod{ts - day_point};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<int>(tod.hours().count()), static_cast<int>(tod.minutes().count()),
                static_cast<int>(tod.seconds().count()));
  return buf;
}

}  // namespace relinker
