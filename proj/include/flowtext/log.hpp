#pragma once

#include <string>

namespace flowtext::log {

enum class Level { kError = 0, kWarn = 1, kInfo = 2, kDebug = 3 };

/// Threshold from FLOWTEXT_LOG (error|warn|info|debug); default warn.
Level threshold();

void message(Level level, const std::string& text);

inline void error(const std::string& text) { message(Level::kError, text); }
inline void warn(const std::string& text) { message(Level::kWarn, text); }
inline void info(const std::string& text) { message(Level::kInfo, text); }
inline void debug(const std::string& text) { message(Level::kDebug, text); }

}  // namespace flowtext::log
