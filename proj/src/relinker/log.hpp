#pragma once

#include <functional>
#include <string_view>

namespace relinker {

enum class LogLevel { Debug = 0, Info = 1, Warning = 2, Error = 3, Off = 4 };

using LogSink = std::function<void(LogLevel, std::string_view)>;

// Replaces the process-wide sink. Passing an empty function restores the
// default stderr sink.
void set_log_sink(LogSink sink);
void set_log_level(LogLevel level);
void log(LogLevel level, std::string_view message);

inline void log_warning(std::string_view message) { log(LogLevel::Warning, message); }

}  // namespace relinker
