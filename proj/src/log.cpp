#include "linkgen/log.hpp"

#include <cstdlib>
#include <iostream>

namespace linkgen {
namespace {

LogLevel parse_level() {
  const char* env = std::getenv("ARTIFACT_LOG_LEVEL");
  if (!env) return LogLevel::kInfo;
  const std::string v(env);
  if (v == "error") return LogLevel::kError;
  if (v == "warn") return LogLevel::kWarn;
  if (v == "info") return LogLevel::kInfo;
  if (v == "debug") return LogLevel::kDebug;
  return LogLevel::kInfo;
}

const char* tag(LogLevel level) {
  switch (level) {
    case LogLevel::kError: return "error";
    case LogLevel::kWarn: return "warn";
    case LogLevel::kInfo: return "info";
    case LogLevel::kDebug: return "debug";
  }
  return "?";
}

}  // namespace

LogLevel log_level() {
  static const LogLevel level = parse_level();
  return level;
}

void log_message(LogLevel level, const std::string& message) {
  if (level > log_level()) return;
  std::cerr << "[" << tag(level) << "] " << message << "\n";
}

}  // namespace linkgen
