#pragma once

#include <string_view>

namespace salt {

enum class LogLevel { off = 0, warn = 1, info = 2 };

void set_log_level(LogLevel level);
LogLevel log_level();

// stderr, prefixed. No-ops when below the current level.
void log_warn(std::string_view message);
void log_info(std::string_view message);

}  // namespace salt
