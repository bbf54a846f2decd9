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

#ifndef TDACS_COMMON_CRYPTO_HPP
#define TDACS_COMMON_CRYPTO_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tdacs::crypto {

constexpr size_t kKeyBytes = 32;
constexpr size_t kNonceBytes = 12;
constexpr size_t kTagBytes = 16;

using Key = std::array<uint8_t, kKeyBytes>;

// Lowercase hex SHA-256 digest of the input bytes.
std::string sha256_hex(std::string_view bytes);

// AES-256-GCM.  Output layout: nonce || ciphertext || tag.  The nonce is
// drawn fresh from the system RNG on every call.
std::vector<uint8_t> aead_seal(const Key& key, std::string_view plaintext);

// Inverse of aead_seal.  nullopt on any authentication failure.
std::optional<std::string> aead_open(const Key& key,
                                     const std::vector<uint8_t>& sealed);

}  // namespace tdacs::crypto

#endif  // TDACS_COMMON_CRYPTO_HPP
