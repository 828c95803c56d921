#include "nlosbench/log.hpp"

#include <cstdlib>
#include <iostream>
#include <string>

namespace nlosbench::log {

namespace {

Level parse_level() {
  const char* env = std::getenv("NLOSBENCH_LOG");
  if (env == nullptr) return Level::Warn;
  const std::string value(env);
  if (value == "debug") return Level::Debug;
  if (value == "info") return Level::Info;
  if (value == "warn") return Level::Warn;
  if (value == "error") return Level::Error;
  if (value == "off") return Level::Off;
  return Level::Warn;
}

const char* tag(Level lvl) {
  switch (lvl) {
    case Level::Debug: return "debug";
    case Level::Info: return "info";
    case Level::Warn: return "warn";
    case Level::Error: return "error";
    default: return "?";
  }
}

}  // namespace

Level level() {
  static const Level cached = parse_level();
  return cached;
}

void write(Level lvl, std::string_view message) {
  if (lvl < level()) return;
  std::cerr << "nlosbench [" << tag(lvl) << "] " << message << '\n';
}

}  // namespace nlosbench::log
