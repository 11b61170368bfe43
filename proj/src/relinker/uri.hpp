#pragma once

#include <string>
#include <string_view>

namespace relinker {

// Strips query string and fragment, lowercases scheme and host, drops the
// scheme's default port (80 for http, 443 for https). The path is kept
// byte-for-byte; no trailing-slash or percent-encoding normalization.
// Throws Error(MalformedUri) unless the input is an absolute URI with an
// authority component.
std::string canonicalize_uri(std::string_view uri);

}  // namespace relinker
