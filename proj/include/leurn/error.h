/*
 * Copyright 2026 The LEURN Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#ifndef LEURN_ERROR_H_
#define LEURN_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace leurn {

enum class ErrorCode {
  kInvalidArgument,
  kShapeMismatch,
  kNonFinite,
  kConfig,
  kIo,
  kParse,
  kData,
  kDivergence,
  kVersion,
  kMissingIndex,
};

// Stable identifier used in machine-readable error lines.
std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Warnings go to stderr unless silenced (tests silence them).
void warn(std::string_view message);
void set_warnings_enabled(bool enabled);

}  // namespace leurn

#endif  // LEURN_ERROR_H_
