#pragma once

#include "mps/bytes.hpp"
#include "mps/error.hpp"

#include <array>
#include <string_view>

namespace mps::crypto {

using AeadNonce = std::array<uint8_t, 12>;

inline constexpr size_t AeadTagSize = 16;

class AuthFailure : public Error
{
public:
  using Error::Error;
};

/// 4-byte role tag (zero padded) followed by a 64-bit big-endian counter.
AeadNonce make_nonce(std::string_view role, uint64_t counter);

/// ChaCha20-Poly1305 (IETF). Output is ciphertext || 16-byte tag.
Buffer aead_seal(ByteSpan key, const AeadNonce& nonce, ByteSpan aad, ByteSpan plaintext);

/// Throws AuthFailure if the tag does not verify.
Buffer aead_open(ByteSpan key, const AeadNonce& nonce, ByteSpan aad, ByteSpan ciphertext);

} // namespace mps::crypto
