#include "seqswarm/log.hpp"

#include <cstdlib>
#include <iostream>

namespace seqswarm {

namespace {
LogLevel g_level = LogLevel::Error;

void emit(LogLevel level, const char* tag, const std::string& message) {
    if (static_cast<int>(level) <= static_cast<int>(g_level)) {
        std::cerr << "[seqswarm " << tag << "] " << message << '\n';
    }
}
}  // namespace

LogLevel log_level() { return g_level; }

void set_log_level(LogLevel level) { g_level = level; }

void set_log_level_from_env() {
    const char* env = std::getenv("SEQSWARM_LOG");
    if (!env) return;
    const std::string value = env;
    if (value == "error") g_level = LogLevel::Error;
    else if (value == "info") g_level = LogLevel::Info;
    else if (value == "debug") g_level = LogLevel::Debug;
}

void log_error(const std::string& message) { emit(LogLevel::Error, "error", message); }
void log_info(const std::string& message) { emit(LogLevel::Info, "info", message); }
void log_debug(const std::string& message) { emit(LogLevel::Debug, "debug", message); }

}  // namespace seqswarm
