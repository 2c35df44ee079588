// Copyright 2026 The SSR Toolkit Authors
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
#include <string_view>

namespace ssr {

enum class ErrorCode {
  kZeroState,
  kEmptySector,
  kTotalMismatch,
  kNotConvertible,
  kZeroProbability,
  kDomainError,
  kEmptyTypicalSet,
  kRankExceedsK,
  kZeroProjection,
  kInvalidInput,
};

/// Machine-readable name, e.g. "ZeroState". Used verbatim in CLI error output.
std::string_view error_code_name(ErrorCode code);

/// Domain error raised by every toolkit operation. Carries a stable code so
/// callers (and the CLI) can dispatch without parsing the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + detail),
        code_(code),
        detail_(detail) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace ssr
