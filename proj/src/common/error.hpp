// Copyright 2026 the tdacs authors.
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

#ifndef TDACS_COMMON_ERROR_HPP
#define TDACS_COMMON_ERROR_HPP

#include <stdexcept>
#include <string>

namespace tdacs {

enum class ErrorCode {
  invalid_argument,
  invalid_config,
  unknown_user,
  auth_failed,
  unknown_resource,
  token_malformed,
  token_tampered,
  ip_not_whitelisted,
  duplicate_rule_id,
  unknown_rule_id,
  out_of_period,
  duplicate_segment_key,
  not_anchored,
  tampered_history,
  no_history,
  backend_unavailable,
  length_mismatch,
  invalid_state,
  io_error,
  internal,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace tdacs

#endif  // TDACS_COMMON_ERROR_HPP
