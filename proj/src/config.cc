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

#include "distinf/config.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "distinf/error.h"

namespace distinf {
namespace {

std::string trim(const std::string& s) {
  size_t begin = 0, end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return s.substr(begin, end - begin);
}

}  // namespace

ConfigFile ConfigFile::parse(std::istream& in) {
  ConfigFile file;
  std::string section;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const std::string text = trim(line);
    if (text.empty() || text[0] == '#' || text[0] == ';') continue;
    if (text.front() == '[') {
      if (text.back() != ']') {
        throw ConfigError("config line " + std::to_string(line_number) +
                          ": unterminated section header");
      }
      section = trim(text.substr(1, text.size() - 2));
      file.sections[section];
      continue;
    }
    const size_t eq = text.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_number) +
                        ": expected key = value");
    }
    const std::string key = trim(text.substr(0, eq));
    if (key.empty()) {
      throw ConfigError("config line " + std::to_string(line_number) +
                        ": empty key");
    }
    auto& entries = file.sections[section];
    if (entries.count(key) != 0) {
      throw ConfigError("config line " + std::to_string(line_number) +
                        ": duplicate key '" + key + "'");
    }
    entries[key] = Entry{trim(text.substr(eq + 1)), line_number};
  }
  return file;
}

ConfigFile ConfigFile::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse(in);
}

SectionReader::SectionReader(const ConfigFile& file, const std::string& section)
    : section_(section) {
  const auto it = file.sections.find(section);
  if (it != file.sections.end()) entries_ = it->second;
}

bool SectionReader::has(const std::string& key) const {
  return entries_.count(key) != 0;
}

const ConfigFile::Entry* SectionReader::find(const std::string& key) {
  consumed_[key] = true;
  const auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

std::string SectionReader::get_string(const std::string& key,
                                      const std::string& fallback) {
  const auto* entry = find(key);
  return entry ? entry->value : fallback;
}

double SectionReader::get_double(const std::string& key, double fallback) {
  const auto* entry = find(key);
  if (!entry) return fallback;
  try {
    size_t used = 0;
    const double value = std::stod(entry->value, &used);
    if (used != entry->value.size()) throw std::invalid_argument("trailing text");
    return value;
  } catch (const std::exception&) {
    throw ConfigError("config line " + std::to_string(entry->line) + ": key '" +
                      key + "' is not a real number");
  }
}

int SectionReader::get_int(const std::string& key, int fallback) {
  const auto* entry = find(key);
  if (!entry) return fallback;
  try {
    size_t used = 0;
    const int value = std::stoi(entry->value, &used);
    if (used != entry->value.size()) throw std::invalid_argument("trailing text");
    return value;
  } catch (const std::exception&) {
    throw ConfigError("config line " + std::to_string(entry->line) + ": key '" +
                      key + "' is not an integer");
  }
}

uint64_t SectionReader::get_u64(const std::string& key, uint64_t fallback) {
  const auto* entry = find(key);
  if (!entry) return fallback;
  try {
    size_t used = 0;
    const uint64_t value = std::stoull(entry->value, &used);
    if (used != entry->value.size()) throw std::invalid_argument("trailing text");
    return value;
  } catch (const std::exception&) {
    throw ConfigError("config line " + std::to_string(entry->line) + ": key '" +
                      key + "' is not an unsigned integer");
  }
}

bool SectionReader::get_bool(const std::string& key, bool fallback) {
  const auto* entry = find(key);
  if (!entry) return fallback;
  std::string v = entry->value;
  std::transform(v.begin(), v.end(), v.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("config line " + std::to_string(entry->line) + ": key '" +
                    key + "' is not a boolean");
}

std::vector<double> SectionReader::get_double_list(
    const std::string& key, const std::vector<double>& fallback) {
  const auto* entry = find(key);
  if (!entry) return fallback;
  std::string text = entry->value;
  std::replace(text.begin(), text.end(), ',', ' ');
  std::istringstream in(text);
  std::vector<double> values;
  double v;
  while (in >> v) values.push_back(v);
  if (!in.eof()) {
    throw ConfigError("config line " + std::to_string(entry->line) + ": key '" +
                      key + "' is not a list of reals");
  }
  if (values.empty()) {
    throw ConfigError("config line " + std::to_string(entry->line) + ": key '" +
                      key + "' holds an empty list");
  }
  return values;
}

void SectionReader::finish() {
  for (const auto& [key, entry] : entries_) {
    if (!consumed_[key]) {
      throw ConfigError("config line " + std::to_string(entry.line) +
                        ": unknown key '" + key + "' in section [" + section_ +
                        "]");
    }
  }
}

std::string fnv1a_hex_digest(const std::string& bytes) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace distinf
