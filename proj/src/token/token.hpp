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

// Token management: mints sealed constrained tokens from the user's
// environment attributes and verifies ownership on presentation.
//
// Wire format: base64url (no padding) of
//   version byte 0x01 || nonce || AES-256-GCM ciphertext || tag
// over the canonical claim bytes (JSON, lexicographically sorted keys).

#ifndef TDACS_TOKEN_TOKEN_HPP
#define TDACS_TOKEN_TOKEN_HPP

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "common/crypto.hpp"
#include "model/model.hpp"

namespace tdacs::token {

constexpr uint8_t kTokenVersion = 0x01;

using SecretKey = crypto::Key;

// 32-byte key as 64 hex chars.
SecretKey key_from_hex(std::string_view hex);

struct TokenRequest {
  std::string uname;
  std::string password;
  std::string ip;
};

struct TokenClaims {
  std::string uname;
  std::map<std::string, std::vector<model::TimeWindow>> speriod;
  std::set<std::string> ip_wl;
  std::map<std::string, long> threshold;
  int64_t issued_at = 0;

  bool operator==(const TokenClaims&) const = default;
};

// Deterministic claim bytes; equal claims always serialize identically.
std::string canonical_claims(const TokenClaims& claims);

std::string seal(const TokenClaims& claims, const SecretKey& key);

// Raises token_malformed (bad encoding, truncation, unknown version) or
// token_tampered (authentication failure).
TokenClaims unseal(const std::string& sealed, const SecretKey& key);

// Authenticates the request and seals claims copied from the user's
// environment attributes.  Raises unknown_user / auth_failed.
std::string gen_token(const TokenRequest& req,
                      const model::AttributeStore& store, const SecretKey& key,
                      int64_t issued_at);

// Unseals, then requires request_ip to be in the embedded whitelist.  The
// tamper check always runs before the ownership check.
TokenClaims verify_token(const std::string& sealed,
                         const std::string& request_ip, const SecretKey& key);

}  // namespace tdacs::token

#endif  // TDACS_TOKEN_TOKEN_HPP
