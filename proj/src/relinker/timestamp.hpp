#pragma once

#include <chrono>
#include <string>
#include <string_view>

namespace relinker {

using Timestamp = std::chrono::sys_seconds;

// Accepts YYYY-MM-DD with an optional THH:MM[:SS[.frac]] part and an
// optional Z or +HH:MM / -HH:MM offset. Fractions are truncated.
Timestamp parse_timestamp(std::string_view text);

// Always emits the extended UTC form, e.g. 2009-08-01T12:00:00Z.
std::string format_timestamp(Timestamp ts);

}  // namespace relinker
