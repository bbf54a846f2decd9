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

#include "common/crypto.hpp"

#include <openssl/evp.h>
#include <openssl/rand.h>
#include <openssl/sha.h>

#include <memory>
#include <stdexcept>

#include "common/error.hpp"

namespace tdacs::crypto {

namespace {

struct CipherCtxFree {
  void operator()(EVP_CIPHER_CTX* ctx) const { EVP_CIPHER_CTX_free(ctx); }
};
using CipherCtx = std::unique_ptr<EVP_CIPHER_CTX, CipherCtxFree>;

}  // namespace

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(),
                 nullptr) != 1) {
    raise(ErrorCode::internal, "sha256 failed");
  }
  static const char* hexdigits = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hexdigits[digest[i] >> 4]);
    out.push_back(hexdigits[digest[i] & 0xf]);
  }
  return out;
}

std::vector<uint8_t> aead_seal(const Key& key, std::string_view plaintext) {
  std::vector<uint8_t> out(kNonceBytes + plaintext.size() + kTagBytes);
  if (RAND_bytes(out.data(), static_cast<int>(kNonceBytes)) != 1) {
    raise(ErrorCode::internal, "nonce generation failed");
  }

  CipherCtx ctx(EVP_CIPHER_CTX_new());
  if (!ctx) {
    raise(ErrorCode::internal, "EVP_CIPHER_CTX_new failed");
  }
  if (EVP_EncryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, key.data(),
                         out.data()) != 1) {
    raise(ErrorCode::internal, "gcm init failed");
  }
  int len = 0;
  uint8_t* ct = out.data() + kNonceBytes;
  if (!plaintext.empty() &&
      EVP_EncryptUpdate(ctx.get(), ct, &len,
                        reinterpret_cast<const uint8_t*>(plaintext.data()),
                        static_cast<int>(plaintext.size())) != 1) {
    raise(ErrorCode::internal, "gcm encrypt failed");
  }
  int fin = 0;
  if (EVP_EncryptFinal_ex(ctx.get(), ct + len, &fin) != 1) {
    raise(ErrorCode::internal, "gcm final failed");
  }
  uint8_t* tag = out.data() + kNonceBytes + plaintext.size();
  if (EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_GET_TAG,
                          static_cast<int>(kTagBytes), tag) != 1) {
    raise(ErrorCode::internal, "gcm tag failed");
  }
  return out;
}

std::optional<std::string> aead_open(const Key& key,
                                     const std::vector<uint8_t>& sealed) {
  if (sealed.size() < kNonceBytes + kTagBytes) {
    return std::nullopt;
  }
  size_t ct_len = sealed.size() - kNonceBytes - kTagBytes;
  const uint8_t* nonce = sealed.data();
  const uint8_t* ct = sealed.data() + kNonceBytes;
  const uint8_t* tag = sealed.data() + kNonceBytes + ct_len;

  CipherCtx ctx(EVP_CIPHER_CTX_new());
  if (!ctx) {
    raise(ErrorCode::internal, "EVP_CIPHER_CTX_new failed");
  }
  if (EVP_DecryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, key.data(),
                         nonce) != 1) {
    raise(ErrorCode::internal, "gcm init failed");
  }
  std::string plain(ct_len, '\0');
  int len = 0;
  if (ct_len > 0 &&
      EVP_DecryptUpdate(ctx.get(), reinterpret_cast<uint8_t*>(plain.data()),
                        &len, ct, static_cast<int>(ct_len)) != 1) {
    return std::nullopt;
  }
  if (EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_TAG,
                          static_cast<int>(kTagBytes),
                          const_cast<uint8_t*>(tag)) != 1) {
    raise(ErrorCode::internal, "gcm set tag failed");
  }
  int fin = 0;
  if (EVP_DecryptFinal_ex(ctx.get(),
                          reinterpret_cast<uint8_t*>(plain.data()) + len,
                          &fin) != 1) {
    return std::nullopt;
  }
  plain.resize(static_cast<size_t>(len + fin));
  return plain;
}

}  // namespace tdacs::crypto
