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

#include "token/token.hpp"

#include <nlohmann/json.hpp>

#include "common/encoding.hpp"
#include "common/error.hpp"

namespace tdacs::token {

using nlohmann::json;

SecretKey key_from_hex(std::string_view hex) {
  auto bytes = encoding::hex_decode(hex);
  if (!bytes || bytes->size() != crypto::kKeyBytes) {
    raise(ErrorCode::invalid_config,
          "token key must be 64 hex characters (32 bytes)");
  }
  SecretKey key;
  std::copy(bytes->begin(), bytes->end(), key.begin());
  return key;
}

std::string canonical_claims(const TokenClaims& claims) {
  json speriod = json::object();
  for (const auto& [service, windows] : claims.speriod) {
    json arr = json::array();
    for (const auto& w : windows) {
      arr.push_back({w.start_min, w.end_min});
    }
    speriod[service] = std::move(arr);
  }
  // nlohmann::json keeps object keys sorted, which makes dump() canonical.
  json doc{{"uname", claims.uname},
           {"speriod", std::move(speriod)},
           {"ip_wl", claims.ip_wl},
           {"threshold", claims.threshold},
           {"issued_at", claims.issued_at}};
  return doc.dump();
}

namespace {

TokenClaims claims_from_canonical(const std::string& text) {
  TokenClaims claims;
  try {
    json doc = json::parse(text);
    claims.uname = doc.at("uname").get<std::string>();
    claims.issued_at = doc.at("issued_at").get<int64_t>();
    claims.ip_wl = doc.at("ip_wl").get<std::set<std::string>>();
    claims.threshold =
        doc.at("threshold").get<std::map<std::string, long>>();
    for (const auto& [service, arr] : doc.at("speriod").items()) {
      std::vector<model::TimeWindow> windows;
      for (const auto& jw : arr) {
        windows.push_back({jw.at(0).get<int>(), jw.at(1).get<int>()});
      }
      claims.speriod[service] = std::move(windows);
    }
  } catch (const json::exception&) {
    raise(ErrorCode::token_malformed, "claim payload is not decodable");
  }
  return claims;
}

}  // namespace

std::string seal(const TokenClaims& claims, const SecretKey& key) {
  std::vector<uint8_t> sealed = crypto::aead_seal(key, canonical_claims(claims));
  std::vector<uint8_t> framed;
  framed.reserve(sealed.size() + 1);
  framed.push_back(kTokenVersion);
  framed.insert(framed.end(), sealed.begin(), sealed.end());
  return encoding::base64url_encode(framed);
}

TokenClaims unseal(const std::string& sealed, const SecretKey& key) {
  auto framed = encoding::base64url_decode(sealed);
  if (!framed || framed->empty()) {
    raise(ErrorCode::token_malformed, "token is not valid base64url");
  }
  if ((*framed)[0] != kTokenVersion) {
    raise(ErrorCode::token_malformed, "unsupported token version");
  }
  if (framed->size() < 1 + crypto::kNonceBytes + crypto::kTagBytes) {
    raise(ErrorCode::token_malformed, "token is truncated");
  }
  std::vector<uint8_t> body(framed->begin() + 1, framed->end());
  auto plain = crypto::aead_open(key, body);
  if (!plain) {
    raise(ErrorCode::token_tampered, "token failed authentication");
  }
  return claims_from_canonical(*plain);
}

std::string gen_token(const TokenRequest& req,
                      const model::AttributeStore& store, const SecretKey& key,
                      int64_t issued_at) {
  const model::UserAttr* user = store.find_user(req.uname);
  if (user == nullptr) {
    raise(ErrorCode::unknown_user, "unknown user: " + req.uname);
  }
  auto pw = store.passwords.find(req.uname);
  if (pw == store.passwords.end() || pw->second != req.password) {
    raise(ErrorCode::auth_failed, "bad credentials for " + req.uname);
  }
  TokenClaims claims;
  claims.uname = user->uname;
  claims.speriod = store.env.speriod;
  claims.ip_wl = store.env.ip_wl;
  claims.threshold = store.env.threshold;
  claims.issued_at = issued_at;
  return seal(claims, key);
}

TokenClaims verify_token(const std::string& sealed,
                         const std::string& request_ip, const SecretKey& key) {
  TokenClaims claims = unseal(sealed, key);
  if (!claims.ip_wl.count(request_ip)) {
    raise(ErrorCode::ip_not_whitelisted,
          "request ip " + request_ip + " is not in the token whitelist");
  }
  return claims;
}

}  // namespace tdacs::token
