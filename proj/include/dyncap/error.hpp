// Copyright 2026 The dyncap Authors
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

#ifndef DYNCAP_ERROR_HPP_
#define DYNCAP_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace dyncap {

enum class ErrorCode {
  kInvalidArgument = 1,
  kInvariantViolation = 2,
  kIo = 3,
};

// Every failure raised by the library carries one of the codes above; the C
// API maps them one-to-one onto dyncap_status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void throw_invalid(const std::string& what) {
  throw Error(ErrorCode::kInvalidArgument, what);
}

[[noreturn]] inline void throw_invariant(const std::string& what) {
  throw Error(ErrorCode::kInvariantViolation, what);
}

[[noreturn]] inline void throw_io(const std::string& what) {
  throw Error(ErrorCode::kIo, what);
}

}  // namespace dyncap

#endif  // DYNCAP_ERROR_HPP_
