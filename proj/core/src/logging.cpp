#include "salt/logging.hpp"

#include <atomic>
#include <iostream>
#include <mutex>

namespace salt {

namespace {
std::atomic<LogLevel> g_level{LogLevel::warn};
std::mutex g_mutex;
}  // namespace

void set_log_level(LogLevel level) { g_level.store(level); }
LogLevel log_level() { return g_level.load(); }

void log_warn(std::string_view message) {
    if (static_cast<int>(g_level.load()) < static_cast<int>(LogLevel::warn)) return;
    std::lock_guard<std::mutex> lock(g_mutex);
    std::cerr << "[salt] warning: " << message << '\n';
}

void log_info(std::string_view message) {
    if (static_cast<int>(g_level.load()) < static_cast<int>(LogLevel::info)) return;
    std::lock_guard<std::mutex> lock(g_mutex);
    std::cerr << "[salt] " << message << '\n';
}

}  // namespace salt
