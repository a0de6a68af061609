#include "flowtext/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace flowtext::log {

namespace {

Level parse_level() {
  const char* env = std::getenv("FLOWTEXT_LOG");
  if (!env) return Level::kWarn;
  if (std::strcmp(env, "error") == 0) return Level::kError;
  if (std::strcmp(env, "warn") == 0) return Level::kWarn;
  if (std::strcmp(env, "info") == 0) return Level::kInfo;
  if (std::strcmp(env, "debug") == 0) return Level::kDebug;
  std::fprintf(stderr, "[flowtext] warn: unknown FLOWTEXT_LOG value '%s'\n",
               env);
  return Level::kWarn;
}

const char* level_tag(Level l) {
  switch (l) {
    case Level::kError: return "error";
    case Level::kWarn: return "warn";
    case Level::kInfo: return "info";
    case Level::kDebug: return "debug";
  }
  return "?";
}

}  // namespace

Level threshold() {
  static const Level cached = parse_level();
  return cached;
}

void message(Level level, const std::string& text) {
  if (static_cast<int>(level) > static_cast<int>(threshold())) return;
  std::fprintf(stderr, "[flowtext] %s: %s\n", level_tag(level), text.c_str());
}

}  // namespace flowtext::log
