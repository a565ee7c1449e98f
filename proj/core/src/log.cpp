// Copyright 2026 The tdm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "log.hpp"

#include <cstdlib>
#include <string>

#include <spdlog/sinks/stdout_sinks.h>

#include "tdm/log.hpp"

namespace tdm {
namespace detail {

spdlog::logger* log() {
  static const std::shared_ptr<spdlog::logger> logger = [] {
    auto l = std::make_shared<spdlog::logger>(
        "tdm", std::make_shared<spdlog::sinks::stderr_sink_mt>());
    l->set_pattern("[%H:%M:%S.%e] [%l] %v");
    l->set_level(spdlog::level::warn);
    if (const char* env = std::getenv("TDM_LOG_LEVEL")) {
      const auto level = spdlog::level::from_str(env);
      if (level != spdlog::level::off || std::string(env) == "off") l->set_level(level);
    }
    return l;
  }();
  return logger.get();
}

}  // namespace detail

void set_log_level(std::string_view level) {
  const std::string name(level);
  const auto parsed = spdlog::level::from_str(name);
  if (parsed == spdlog::level::off && name != "off") return;
  detail::log()->set_level(parsed);
}

}  // namespace tdm
