// Copyright 2026 The lolab Authors.
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

#ifndef LOLAB_CORE_ERRORS_HPP_
#define LOLAB_CORE_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace lolab {

// Rejected input: dimension mismatches, malformed files, guard violations.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A name that is not in the strategy registry.
class UnknownAlgorithm : public InputError {
 public:
  explicit UnknownAlgorithm(const std::string& name)
      : InputError("unknown algorithm '" + name + "'") {}
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A strategy serialized more state than it declared.
class StateBudgetExceeded : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace lolab

#endif  // LOLAB_CORE_ERRORS_HPP_
