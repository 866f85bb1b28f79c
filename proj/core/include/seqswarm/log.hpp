#ifndef SEQSWARM_LOG_HPP
#define SEQSWARM_LOG_HPP

#include <string>

namespace seqswarm {

enum class LogLevel { Error = 0, Info = 1, Debug = 2 };

LogLevel log_level();
void set_log_level(LogLevel level);

/// Reads SEQSWARM_LOG (error|info|debug); unknown or unset keeps the default.
void set_log_level_from_env();

void log_error(const std::string& message);
void log_info(const std::string& message);
void log_debug(const std::string& message);

}  // namespace seqswarm

#endif
