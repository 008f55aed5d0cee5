// Copyright 2026 The srfuse Authors.
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

#pragma once

#include <stdexcept>
#include <string>

namespace srfuse {

enum class ErrorCode {
  kInvalidArgument = 1,
  kIo = 2,
  kDimensionMismatch = 3,
  kParse = 4,
};

// Single exception type thrown by the core; the C API maps `code()` onto
// srfuse_status values.
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

[[noreturn]] inline void throw_dimension(const std::string& what) {
  throw Error(ErrorCode::kDimensionMismatch, what);
}

[[noreturn]] inline void throw_io(const std::string& what) {
  throw Error(ErrorCode::kIo, what);
}

[[noreturn]] inline void throw_parse(const std::string& what) {
  throw Error(ErrorCode::kParse, what);
}

}  // namespace srfuse
