// Copyright 2026 The distinf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "distinf/manifest.h"

#include <chrono>
#include <cstdio>
#include <ctime>

namespace distinf {

std::string iso8601_utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ",
                tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday, tm.tm_hour,
                tm.tm_min, tm.tm_sec);
  return std::string(buf);
}

void write_manifest(const RunManifest& manifest, std::ostream& out) {
  out << "command = " << manifest.command_line << '\n';
  out << "config_digest = " << manifest.config_digest << '\n';
  out << "master_seed = " << manifest.master_seed << '\n';
  out << "library_version = " << manifest.library_version << '\n';
  out << "eigen_version = " << manifest.eigen_version << '\n';
  out << "started = " << manifest.started << '\n';
  out << "finished = " << manifest.finished << '\n';
  for (const auto& file : manifest.output_files) {
    out << "output = " << file << '\n';
  }
}

}  // namespace distinf
