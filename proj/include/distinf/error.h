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

#ifndef DISTINF_ERROR_H_
#define DISTINF_ERROR_H_

#include <stdexcept>
#include <string>

namespace distinf {

// Bad argument values or violated preconditions (negative variance,
// mismatched sizes, empty inputs, ...).
class InvalidParameterError : public std::invalid_argument {
 public:
  explicit InvalidParameterError(const std::string& what)
      : std::invalid_argument(what) {}
};

// Rank-deficient design matrices; the message names the offending
// condition-number estimate.
class SingularSystemError : public std::runtime_error {
 public:
  explicit SingularSystemError(const std::string& what)
      : std::runtime_error(what) {}
};

// Subsampling strata that cannot satisfy the requested counts.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// Inconsistent combinations of otherwise-valid pieces (adversary built for a
// different architecture or family, ...).
class InvalidConfigurationError : public std::runtime_error {
 public:
  explicit InvalidConfigurationError(const std::string& what)
      : std::runtime_error(what) {}
};

// (index set, distance) pairs with no supported optimal-guess evaluation.
class UnsupportedConfigurationError : public std::runtime_error {
 public:
  explicit UnsupportedConfigurationError(const std::string& what)
      : std::runtime_error(what) {}
};

// Monte Carlo setups that produce too many degenerate fits to be trusted.
class DegenerateConfigurationError : public std::runtime_error {
 public:
  explicit DegenerateConfigurationError(const std::string& what)
      : std::runtime_error(what) {}
};

// Shadow corpora unusable for meta-model training (e.g. a single class).
class DegenerateCorpusError : public std::runtime_error {
 public:
  explicit DegenerateCorpusError(const std::string& what)
      : std::runtime_error(what) {}
};

// Problems in configuration files or flags; the CLI maps these to exit 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace distinf

#endif  // DISTINF_ERROR_H_
