// Copyright 2026 The sscfa Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SSCFA_ERRORS_HPP
#define SSCFA_ERRORS_HPP

#include <stdexcept>

namespace sscfa {

/// An analysis was configured with incompatible options, e.g. garbage
/// collection with a summary that exposes no addresses.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A node or edge cap was exceeded. Never turned into a partial result.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A frame or closure whose environment misses one of its free variables.
class MalformedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace sscfa

#endif  // SSCFA_ERRORS_HPP
