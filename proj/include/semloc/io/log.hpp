/*
 * Copyright 2026 The Semloc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SEMLOC_IO_LOG_HPP_
#define SEMLOC_IO_LOG_HPP_

#include <cstdlib>
#include <iostream>
#include <string>

namespace semloc {

enum class LogLevel { kError = 0, kWarn = 1, kInfo = 2, kDebug = 3 };

// Level from SEMLOC_LOG (error|warn|info|debug), default warn.
inline LogLevel log_level() {
  static const LogLevel level = [] {
    const char* env = std::getenv("SEMLOC_LOG");
    if (env == nullptr) return LogLevel::kWarn;
    const std::string v(env);
    if (v == "error") return LogLevel::kError;
    if (v == "info") return LogLevel::kInfo;
    if (v == "debug") return LogLevel::kDebug;
    return LogLevel::kWarn;
  }();
  return level;
}

inline void log_message(LogLevel level, const std::string& tag,
                        const std::string& message) {
  if (level <= log_level()) {
    std::cerr << "[" << tag << "] " << message << "\n";
  }
}

inline void log_error(const std::string& m) {
  log_message(LogLevel::kError, "error", m);
}
inline void log_warn(const std::string& m) {
  log_message(LogLevel::kWarn, "warn", m);
}
inline void log_info(const std::string& m) {
  log_message(LogLevel::kInfo, "info", m);
}
inline void log_debug(const std::string& m) {
  log_message(LogLevel::kDebug, "debug", m);
}

}  // namespace semloc

#endif  // SEMLOC_IO_LOG_HPP_
