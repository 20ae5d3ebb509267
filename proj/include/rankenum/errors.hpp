// Copyright 2026 The rankenum Authors
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

#ifndef RANKENUM_ERRORS_HPP_
#define RANKENUM_ERRORS_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rankenum {

// Malformed input (JSON, documents, symbols outside the alphabet).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::int64_t position = -1)
      : std::runtime_error(what), position_(position) {}
  // Offending code point index in a document, or -1.
  std::int64_t position() const { return position_; }

 private:
  std::int64_t position_;
};

class AmbiguityDetected : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a pruned DAG has no source-to-sink path.
class NoPaths : public std::runtime_error {
 public:
  NoPaths() : std::runtime_error("no accepting run") {}
};

class SizeBoundExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PreconditionViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class Infeasible : public std::runtime_error {
 public:
  Infeasible() : std::runtime_error("inequality system is infeasible") {}
};

}  // namespace rankenum

#endif  // RANKENUM_ERRORS_HPP_
