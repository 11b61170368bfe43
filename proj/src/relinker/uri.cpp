#include "relinker/uri.hpp"

#include <algorithm>
#include <cctype>

#include "relinker/error.hpp"

namespace relinker {
namespace {

[[noreturn]] void malformed(std::string_view uri, std::string_view why) {
  throw Error(ErrorCode::MalformedUri, "malformed URI '" + std::string(uri) + "': " + std::string(why));
}

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::string canonicalize_uri(std::string_view uri) {
  const size_t colon = uri.find(':');
  if (colon == std::string_view::npos || colon == 0) malformed(uri, "missing scheme");
  if (!std::isalpha(static_cast<unsigned char>(uri[0]))) malformed(uri, "scheme must start with a letter");
  for (size_t i = 1; i < colon; ++i) {
    const char c = uri[i];
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '-' && c != '.') {
      malformed(uri, "invalid scheme character");
    }
  }
  for (const char c : uri) {
    if (static_cast<unsigned char>(c) <= 0x20 || c == 0x7F) malformed(uri, "whitespace or control character");
  }
  const std::string scheme = lowercase(uri.substr(0, colon));
  if (uri.substr(colon + 1, 2) != "//") malformed(uri, "missing authority");

  std::string_view rest = uri.substr(colon + 3);
  rest = rest.substr(0, rest.find_first_of("?#"));
  const size_t path_start = rest.find('/');
  const std::string_view authority = rest.substr(0, path_start);
  const std::string_view path = path_start == std::string_view::npos ? std::string_view{} : rest.substr(path_start);

  std::string_view userinfo;
  std::string_view hostport = authority;
  if (const size_t at = authority.rfind('@'); at != std::string_view::npos) {
    userinfo = authority.substr(0, at + 1);
    hostport = authority.substr(at + 1);
  }

  std::string_view host = hostport;
  std::string_view port;
  if (!hostport.empty() && hostport.front() == '[') {
    const size_t close = hostport.find(']');
    if (close == std::string_view::npos) malformed(uri, "unterminated IPv6 literal");
    host = hostport.substr(0, close + 1);
    const std::string_view after = hostport.substr(close + 1);
    if (!after.empty()) {
      if (after.front() != ':') malformed(uri, "garbage after IPv6 literal");
      port = after.substr(1);
    }
  } else if (const size_t pc = hostport.rfind(':'); pc != std::string_view::npos) {
    host = hostport.substr(0, pc);
    port = hostport.substr(pc + 1);
  }
  if (host.empty()) malformed(uri, "empty host");
  if (!std::all_of(port.begin(), port.end(), [](unsigned char c) { return std::isdigit(c); })) {
    malformed(uri, "non-numeric port");
  }
  const bool default_port = port.empty() || (scheme == "http" && port == "80") ||
                            (scheme == "https" && port == "443");

  std::string out = scheme;
  out += "://";
  out += userinfo;
  out += lowercase(host);
  if (!default_port) {
    out += ':';
    out += port;
  }
  out += path;
  return out;
}

}  // namespace relinker
