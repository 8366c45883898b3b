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

#ifndef DISTINF_MANIFEST_H_
#define DISTINF_MANIFEST_H_

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace distinf {

inline constexpr const char* kLibraryVersion = "0.1.0";

// Provenance record written alongside every output directory: enough to
// reproduce the run byte for byte (the timestamps are informational only).
struct RunManifest {
  std::string command_line;
  std::string config_digest;  // fnv1a over the loaded config bytes
  uint64_t master_seed = 0;
  std::string library_version = kLibraryVersion;
  std::string eigen_version;
  std::string started;   // ISO 8601 UTC
  std::string finished;
  std::vector<std::string> output_files;
};

std::string iso8601_utc_now();

// Flat key = value text.
void write_manifest(const RunManifest& manifest, std::ostream& out);

}  // namespace distinf

#endif  // DISTINF_MANIFEST_H_
