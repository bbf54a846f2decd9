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

#ifndef TDACS_COMMON_ENCODING_HPP
#define TDACS_COMMON_ENCODING_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tdacs::encoding {

// RFC 4648 base64url, no padding.
std::string base64url_encode(const std::vector<uint8_t>& bytes);
std::optional<std::vector<uint8_t>> base64url_decode(std::string_view text);

std::string hex_encode(const std::vector<uint8_t>& bytes);
std::optional<std::vector<uint8_t>> hex_decode(std::string_view text);

}  // namespace tdacs::encoding

#endif  // TDACS_COMMON_ENCODING_HPP
