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

#ifndef DISTINF_CONFIG_H_
#define DISTINF_CONFIG_H_

#include <cstdint>
#include <istream>
#include <map>
#include <string>
#include <vector>

namespace distinf {

// Sectioned `key = value` configuration text. Lines starting with '#' (or
// ';') are comments; `[section]` opens a section; keys before any section
// header land in the unnamed section "".
struct ConfigFile {
  struct Entry {
    std::string value;
    int line = 0;
  };
  std::map<std::string, std::map<std::string, Entry>> sections;

  static ConfigFile parse(std::istream& in);       // throws ConfigError
  static ConfigFile parse_file(const std::string& path);

  bool has_section(const std::string& name) const {
    return sections.count(name) != 0;
  }
};

// Typed accessors over one section. Every get_* marks its key as consumed;
// finish() rejects any unconsumed key, naming the key and its line.
class SectionReader {
 public:
  SectionReader(const ConfigFile& file, const std::string& section);

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback);
  double get_double(const std::string& key, double fallback);
  int get_int(const std::string& key, int fallback);
  uint64_t get_u64(const std::string& key, uint64_t fallback);
  bool get_bool(const std::string& key, bool fallback);
  // Comma- or space-separated list of reals.
  std::vector<double> get_double_list(const std::string& key,
                                      const std::vector<double>& fallback);

  // Throws ConfigError for the first key that no getter consumed.
  void finish();

 private:
  const ConfigFile::Entry* find(const std::string& key);
  std::string section_;
  std::map<std::string, ConfigFile::Entry> entries_;
  std::map<std::string, bool> consumed_;
};

// FNV-1a digest of raw bytes, hex-encoded; the manifest records it for the
// loaded configuration file.
std::string fnv1a_hex_digest(const std::string& bytes);

}  // namespace distinf

#endif  // DISTINF_CONFIG_H_
