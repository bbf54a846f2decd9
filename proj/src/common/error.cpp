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

#include "common/error.hpp"

namespace tdacs {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument:
      return "invalid_argument";
    case ErrorCode::invalid_config:
      return "invalid_config";
    case ErrorCode::unknown_user:
      return "unknown_user";
    case ErrorCode::auth_failed:
      return "auth_failed";
    case ErrorCode::unknown_resource:
      return "unknown_resource";
    case ErrorCode::token_malformed:
      return "token_malformed";
    case ErrorCode::token_tampered:
      return "token_tampered";
    case ErrorCode::ip_not_whitelisted:
      return "ip_not_whitelisted";
    case ErrorCode::duplicate_rule_id:
      return "duplicate_rule_id";
    case ErrorCode::unknown_rule_id:
      return "unknown_rule_id";
    case ErrorCode::out_of_period:
      return "out_of_period";
    case ErrorCode::duplicate_segment_key:
      return "duplicate_segment_key";
    case ErrorCode::not_anchored:
      return "not_anchored";
    case ErrorCode::tampered_history:
      return "tampered_history";
    case ErrorCode::no_history:
      return "no_history";
    case ErrorCode::backend_unavailable:
      return "backend_unavailable";
    case ErrorCode::length_mismatch:
      return "length_mismatch";
    case ErrorCode::invalid_state:
      return "invalid_state";
    case ErrorCode::io_error:
      return "io_error";
    case ErrorCode::internal:
      return "internal";
  }
  return "unknown";
}

}  // namespace tdacs
